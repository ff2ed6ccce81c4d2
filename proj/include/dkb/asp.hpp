#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dkb/dlprog.hpp"
#include "dkb/kb.hpp"

namespace dkb {

// Ground literal over interned predicates and constants.
struct GLit {
    int pred = 0;
    bool neg = false;
    std::vector<int> args;
    auto operator<=>(const GLit&) const = default;
};

struct GroundRule {
    int head = -1;
    std::vector<int> pos;
    std::vector<int> naf;
    auto operator<=>(const GroundRule&) const = default;
};

struct GroundProgram {
    std::vector<std::string> universe;  // canonical constant order
    std::vector<std::string> preds;
    std::vector<GLit> lits;
    std::vector<GroundRule> rules;  // facts are rules with empty bodies
    std::vector<OverrideKey> overrides;

    int intern_const(const std::string& c);
    int intern_pred(const std::string& p);
    int intern(const GLit& l);
    int find(const GLit& l) const;
    int find(const DLiteral& ground) const;
    int complement(int lit) const;
    std::string to_string(int lit) const;
    DLiteral to_dliteral(int lit) const;
    // Canonical literal order: predicate name, polarity, then arguments by
    // universe position.
    bool canonical_less(int a, int b) const;

private:
    std::map<std::string, int> const_ids_, pred_ids_;
    std::map<GLit, int> lit_ids_;
};

using LiteralSet = std::set<int>;

struct AnswerSet {
    std::vector<int> literals;  // canonical order
    std::vector<int> ovr;       // the ovr atoms, canonical order
    Chi chi;
};

struct SolveOptions {
    std::optional<std::size_t> limit;
    bool naive = false;  // brute force over all interpretations; tiny programs only
};

class UnsupportedProgram : public Error {
public:
    using Error::Error;
};

GroundProgram ground(const DProgram& p);
// Least model of a NAF-free ground program; nullopt means INCONSISTENT.
std::optional<LiteralSet> least_model(const GroundProgram& positive);
GroundProgram reduct(const GroundProgram& p, const LiteralSet& s);

std::vector<AnswerSet> answer_sets(const GroundProgram& g, const SolveOptions& opt = {});
std::vector<AnswerSet> answer_sets(const DProgram& p, const SolveOptions& opt = {});
// Checks every subset of the ovr candidates without propagation.
std::vector<AnswerSet> answer_sets_exhaustive(const GroundProgram& g);

// Ground ovr atoms that can appear at all (heads of ground overriding rules).
std::vector<int> ovr_candidates(const GroundProgram& g);
Chi chi_of(const GroundProgram& g, const std::vector<int>& ovr_atoms);

}  // namespace dkb
