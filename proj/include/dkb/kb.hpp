#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dkb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NameKind { Concept, Role, Individual };

struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 1;
    bool operator==(const SourceSpan&) const = default;
};

// Names are kept in declaration order; that order is the canonical order
// used by every later stage.
class Vocabulary {
public:
    static const std::vector<std::string>& reserved_prefixes();
    static bool is_reserved(const std::string& name);

    const std::vector<std::string>& concepts() const { return concepts_; }
    const std::vector<std::string>& roles() const { return roles_; }
    const std::vector<std::string>& individuals() const { return individuals_; }
    const std::set<std::string>& generated() const { return generated_; }

    std::optional<NameKind> kind_of(const std::string& name) const;
    bool has(const std::string& name, NameKind k) const;

    // Returns false if the name is already declared with a different kind.
    bool declare(const std::string& name, NameKind k);
    void mark_generated(const std::string& name) { generated_.insert(name); }

    // Position of an individual in declaration order, or -1.
    int individual_rank(const std::string& name) const;

    bool operator==(const Vocabulary& o) const {
        return concepts_ == o.concepts_ && roles_ == o.roles_ &&
               individuals_ == o.individuals_ && generated_ == o.generated_;
    }

private:
    std::vector<std::string> concepts_, roles_, individuals_;
    std::set<std::string> generated_;
    std::unordered_map<std::string, NameKind> index_;
};

struct RoleExpr {
    std::string name;
    bool inverted = false;
    auto operator<=>(const RoleExpr&) const = default;
};

struct LeftConcept {
    enum class Kind { Atomic, Exists };
    Kind kind = Kind::Atomic;
    std::string name;  // concept name, or role name for Exists
    bool inverted = false;

    static LeftConcept atomic(std::string a) { return {Kind::Atomic, std::move(a), false}; }
    static LeftConcept exists(std::string r, bool inv = false) {
        return {Kind::Exists, std::move(r), inv};
    }
    RoleExpr role() const { return {name, inverted}; }
    auto operator<=>(const LeftConcept&) const = default;
};

struct RightConcept {
    enum class Kind { Atomic, Not, Exists, Bottom };
    Kind kind = Kind::Atomic;
    LeftConcept c;  // unused for Bottom

    static RightConcept atomic(std::string a) { return {Kind::Atomic, LeftConcept::atomic(std::move(a))}; }
    static RightConcept negation(LeftConcept l) { return {Kind::Not, std::move(l)}; }
    static RightConcept exists(std::string r, bool inv = false) {
        return {Kind::Exists, LeftConcept::exists(std::move(r), inv)};
    }
    static RightConcept bottom() { return {Kind::Bottom, {}}; }
    auto operator<=>(const RightConcept&) const = default;
};

struct Axiom {
    enum class Kind { ConceptIncl, RoleIncl, Dis, Inv, Irr, Ref };
    Kind kind = Kind::ConceptIncl;
    LeftConcept lhs;
    RightConcept rhs;
    RoleExpr r1, r2;

    static Axiom concept_incl(LeftConcept l, RightConcept r) {
        Axiom a;
        a.lhs = std::move(l);
        a.rhs = std::move(r);
        return a;
    }
    static Axiom subclass(std::string a, std::string b) {
        return concept_incl(LeftConcept::atomic(std::move(a)), RightConcept::atomic(std::move(b)));
    }
    static Axiom role_incl(RoleExpr r, RoleExpr s) { return role_axiom(Kind::RoleIncl, std::move(r), std::move(s)); }
    static Axiom dis(RoleExpr r, RoleExpr s) { return role_axiom(Kind::Dis, std::move(r), std::move(s)); }
    static Axiom inv(std::string r, std::string s) { return role_axiom(Kind::Inv, {std::move(r)}, {std::move(s)}); }
    static Axiom irr(std::string r) { return role_axiom(Kind::Irr, {std::move(r)}, {}); }
    static Axiom ref(std::string r) { return role_axiom(Kind::Ref, {std::move(r)}, {}); }

    // 1 for concept inclusions and Irr, 2 for the binary role axioms.
    int arity() const;

    auto operator<=>(const Axiom&) const = default;

private:
    static Axiom role_axiom(Kind k, RoleExpr r, RoleExpr s) {
        Axiom a;
        a.kind = k;
        a.r1 = std::move(r);
        a.r2 = std::move(s);
        return a;
    }
};

struct Assertion {
    enum class Kind { Concept, Role };
    Kind kind = Kind::Concept;
    std::string pred;
    std::string a, b;
    bool positive = true;

    static Assertion concept_of(std::string p, std::string x, bool pos = true) {
        return {Kind::Concept, std::move(p), std::move(x), {}, pos};
    }
    static Assertion role(std::string p, std::string x, std::string y, bool pos = true) {
        return {Kind::Role, std::move(p), std::move(x), std::move(y), pos};
    }
    Assertion negated() const {
        Assertion r = *this;
        r.positive = !positive;
        return r;
    }
    auto operator<=>(const Assertion&) const = default;
};

struct DefeasibleAxiom {
    Axiom ax;
    std::string id;
    auto operator<=>(const DefeasibleAxiom&) const = default;
};

struct DefeasibleAssertion {
    Assertion as;
    std::string id;
    auto operator<=>(const DefeasibleAssertion&) const = default;
};

struct DKB {
    Vocabulary vocab;
    std::vector<Axiom> strict;
    std::vector<DefeasibleAxiom> defeasible;
    std::vector<Assertion> abox;
    std::vector<DefeasibleAssertion> def_abox;
    bool una = true;

    struct Spans {
        std::vector<SourceSpan> strict, defeasible, abox, def_abox;
    } spans;

    // Structural equality; source spans are ignored.
    bool operator==(const DKB& o) const {
        return vocab == o.vocab && strict == o.strict && defeasible == o.defeasible &&
               abox == o.abox && def_abox == o.def_abox && una == o.una;
    }

    const DefeasibleAxiom* find_defeasible(const std::string& id) const;
    const DefeasibleAssertion* find_defeasible_assertion(const std::string& id) const;
    // Next unused "dN" identifier.
    std::string fresh_defeasible_id() const;
    // Declares every name used by the statements (kinds inferred from position).
    void declare_used_names();
    DKB strict_part() const;
    std::size_t size() const;
};

struct ClashingAssumption {
    std::string axiom_id;
    std::vector<std::string> args;
    auto operator<=>(const ClashingAssumption&) const = default;
};

using Chi = std::set<ClashingAssumption>;

// Element of a clashing set: a possibly negated concept or role assertion.
// Concept literals may be existential (exists R(e)).
struct ClashLiteral {
    bool positive = true;
    bool is_role = false;
    LeftConcept cls;
    RoleExpr role;
    std::string a, b;

    static ClashLiteral concept_lit(LeftConcept c, std::string e, bool pos) {
        ClashLiteral l;
        l.positive = pos;
        l.cls = std::move(c);
        l.a = std::move(e);
        return l;
    }
    static ClashLiteral role_lit(RoleExpr r, std::string x, std::string y, bool pos) {
        ClashLiteral l;
        l.positive = pos;
        l.is_role = true;
        l.role = std::move(r);
        l.a = std::move(x);
        l.b = std::move(y);
        return l;
    }
    // Role literal with the inversion resolved: R^-(a,b) becomes R(b,a).
    ClashLiteral direct() const;
    auto operator<=>(const ClashLiteral&) const = default;
};

struct ClashingSet {
    std::vector<ClashLiteral> elements;
    auto operator<=>(const ClashingSet&) const = default;
};

struct Diagnostic {
    std::string message;
    std::optional<SourceSpan> span;
};

struct ValidationReport {
    std::vector<Diagnostic> errors;
    std::vector<Diagnostic> warnings;
    bool ok() const { return errors.empty(); }
};

ValidationReport validate_dkb(const DKB& k);

std::vector<ClashingSet> minimal_clashing_sets(const Axiom& alpha, const std::vector<std::string>& args);
std::vector<ClashingSet> minimal_clashing_sets(const Assertion& alpha);

// Ground first-order instantiation.  Terms are constants, Skolem terms
// written f_R(t), or "?y" for a variable that stays universally quantified.
struct GroundLit {
    std::string pred;
    std::vector<std::string> args;
    bool positive = true;
    bool falsum = false;
    auto operator<=>(const GroundLit&) const = default;
};

struct GroundClause {
    std::optional<GroundLit> body;
    GroundLit head;
    auto operator<=>(const GroundClause&) const = default;
};

std::vector<GroundClause> instantiate_axiom(const Axiom& alpha, const std::vector<std::string>& args);

std::string to_string(const GroundLit& l);
std::string to_string(const GroundClause& c);

// Human readable renderings (DL notation).
std::string pretty(const RoleExpr& r);
std::string pretty(const LeftConcept& c);
std::string pretty(const RightConcept& c);
std::string pretty(const Axiom& a);
std::string pretty(const Assertion& a);
std::string pretty(const ClashLiteral& l);
std::string pretty(const ClashingSet& s);
std::string pretty(const ClashingAssumption& c, const DKB& k);

std::string skolem(const std::string& role, bool inverted, const std::string& term);

// Generated symbol names shared by the normalizer and the front ends.
std::string inverse_role_name(const std::string& role);
std::string exists_concept_name(const RoleExpr& r);

}  // namespace dkb
