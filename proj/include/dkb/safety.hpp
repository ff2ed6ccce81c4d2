#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dkb/kb.hpp"

namespace dkb {

enum class ArgType { Named, Skolem };

struct AbstractAtom {
    std::string predicate;
    bool is_role = false;
    std::vector<ArgType> arg_types;
    bool has_skolem() const;
    auto operator<=>(const AbstractAtom&) const = default;
};

struct ChainBound {
    bool unbounded = false;
    int n = 0;
    bool operator==(const ChainBound&) const = default;
};

struct SafetyWitness {
    std::vector<AbstractAtom> chain;  // seed first, offending atom last
    std::vector<std::string> steps;   // axiom licensing chain[i] -> chain[i+1]
    std::string fed_axiom;            // defeasible axiom whose clashing set it matches
};

struct SafetyReport {
    bool exception_safe = true;
    ChainBound chain_bound;
    bool recursive = false;
    std::vector<SafetyWitness> witnesses;
};

class NotNormalForm : public Error {
public:
    NotNormalForm() : Error("input is not in normal form") {}
};

// Derivation closure of K_s over abstract atoms.
struct AbstractClosure {
    std::vector<AbstractAtom> atoms;
    struct Edge {
        int from, to;
        bool generator;
        std::string axiom;
    };
    std::vector<Edge> edges;
    std::vector<int> parent;  // first derivation edge per atom, -1 for seeds
};

AbstractClosure abstract_closure(const DKB& normal);
std::size_t abstract_space_bound(const DKB& normal);
// One derivation step of a (strict, normal-form) axiom applied to an atom.
std::vector<AbstractAtom> apply_abstract(const Axiom& a, const AbstractAtom& in);

SafetyReport check_exception_safe(const DKB& normal);
ChainBound check_chain_safety(const DKB& normal);
SafetyReport classify(const DKB& k);

std::string to_string(const AbstractAtom& a);
std::string to_string(const ChainBound& b);
std::string render(const SafetyReport& r);

}  // namespace dkb
