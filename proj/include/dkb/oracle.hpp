#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dkb/kb.hpp"

namespace dkb {

// Brute-force reference semantics: a Skolem chase over the first-order
// reading of the axioms, with defeasible instances in chi switched off.
// Works on raw DKBs as well as normal-form ones.

struct SkTerm {
    std::string name;  // individual, or f_R(t) / f_R^-(t); w_R(t) for added witnesses
    int depth = 0;
    int parent = -1;
    RoleExpr via;
};

// Signed literal over term ids.  Unary literals use LeftConcept so that
// "exists R(t)" is a predicate of its own; role literals are stored with the
// inversion resolved.
struct OLit {
    bool positive = true;
    bool is_role = false;
    LeftConcept cls;
    std::string role;
    int a = -1, b = -1;
    auto operator<=>(const OLit&) const = default;
};

struct Derivation {
    int lit = -1;            // index into literals
    std::string kind;        // abox | defeasible-abox | strict | defeasible | exists-intro | cutoff | added
    int axiom = -1;          // index into strict / defeasible / abox lists
    std::vector<int> args;   // instance arguments (term ids)
    std::vector<int> premises;
};

enum class ModelStatus { Consistent, Inconsistent };

struct LeastCASModel {
    Chi chi;
    ModelStatus status = ModelStatus::Consistent;
    int depth = 0;
    std::vector<SkTerm> terms;
    std::vector<OLit> literals;  // derivation order
    std::vector<Derivation> derivations;
    std::optional<std::string> clash;  // first complementary pair, rendered

    bool consistent() const { return status == ModelStatus::Consistent; }
    int term(const std::string& name) const;
    bool holds(const OLit& l) const;
    // Positive or negative element of a clashing set over named terms.
    bool holds(const ClashLiteral& l) const;
    bool holds(const Assertion& a) const;
    std::string render(const OLit& l) const;
    std::vector<std::string> rendered() const;  // sorted
};

struct OracleOptions {
    std::optional<int> depth;  // default: chain bound, or 3 when unbounded
    std::size_t budget = 20;   // max candidates surviving the prefilter
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

int default_depth(const DKB& k);

std::vector<ClashingAssumption> candidate_assumptions(const DKB& k);

// `added` holds extra facts (the beta of the justification condition).
LeastCASModel least_cas_model(const DKB& k, const Chi& chi, int depth, const std::vector<ClashLiteral>& added = {});

struct AssumptionEvidence {
    ClashingAssumption assumption;
    std::optional<ClashingSet> via;  // empty when no clashing set qualifies
};

struct JustificationResult {
    bool justified = true;
    std::vector<AssumptionEvidence> evidence;
};

JustificationResult is_justified(const DKB& k, const Chi& chi, int depth);

// Every justified chi with a consistent least model, sorted.
std::vector<Chi> oracle_justified_chis(const DKB& k, const OracleOptions& opt = {});

// Cautious entailment over all justified chis (vacuously true when none).
bool oracle_entails(const DKB& k, const Assertion& q, const OracleOptions& opt = {});
bool oracle_entails(const DKB& k, const std::vector<Chi>& chis, const Assertion& q, int depth);

// Names (concepts, roles, exists-concepts) that no individual can belong to
// when defeasible axioms are read as strict.  Empty for a coherent TBox.
std::vector<std::string> unsatisfiable_names(const DKB& k, std::optional<int> depth = {});

// Strict part satisfiable according to the chase.
bool oracle_satisfiable(const DKB& k, std::optional<int> depth = {});

}  // namespace dkb
