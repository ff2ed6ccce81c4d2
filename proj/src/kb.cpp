#include "dkb/kb.hpp"

#include <algorithm>

namespace dkb {

const std::vector<std::string>& Vocabulary::reserved_prefixes() {
    static const std::vector<std::string> p{"_ex_", "_nf_", "_aux_"};
    return p;
}

bool Vocabulary::is_reserved(const std::string& name) {
    for (const auto& p : reserved_prefixes())
        if (name.rfind(p, 0) == 0) return true;
    return false;
}

std::optional<NameKind> Vocabulary::kind_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Vocabulary::has(const std::string& name, NameKind k) const {
    auto it = index_.find(name);
    return it != index_.end() && it->second == k;
}

bool Vocabulary::declare(const std::string& name, NameKind k) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second == k;
    index_.emplace(name, k);
    switch (k) {
        case NameKind::Concept: concepts_.push_back(name); break;
        case NameKind::Role: roles_.push_back(name); break;
        case NameKind::Individual: individuals_.push_back(name); break;
    }
    return true;
}

int Vocabulary::individual_rank(const std::string& name) const {
    auto it = std::find(individuals_.begin(), individuals_.end(), name);
    return it == individuals_.end() ? -1 : int(it - individuals_.begin());
}

int Axiom::arity() const {
    switch (kind) {
        case Kind::ConceptIncl:
        case Kind::Irr:
        case Kind::Ref: return 1;
        default: return 2;
    }
}

const DefeasibleAxiom* DKB::find_defeasible(const std::string& id) const {
    for (const auto& d : defeasible)
        if (d.id == id) return &d;
    return nullptr;
}

const DefeasibleAssertion* DKB::find_defeasible_assertion(const std::string& id) const {
    for (const auto& d : def_abox)
        if (d.id == id) return &d;
    return nullptr;
}

std::string DKB::fresh_defeasible_id() const {
    long best = 0;
    auto scan = [&](const std::string& id) {
        if (id.size() < 2 || id[0] != 'd') return;
        if (!std::all_of(id.begin() + 1, id.end(), ::isdigit)) return;
        best = std::max(best, std::stol(id.substr(1)));
    };
    for (const auto& d : defeasible) scan(d.id);
    for (const auto& d : def_abox) scan(d.id);
    return "d" + std::to_string(best + 1);
}

namespace {

void declare_left(Vocabulary& v, const LeftConcept& c) {
    v.declare(c.name, c.kind == LeftConcept::Kind::Atomic ? NameKind::Concept : NameKind::Role);
}

void declare_axiom(Vocabulary& v, const Axiom& a) {
    switch (a.kind) {
        case Axiom::Kind::ConceptIncl:
            declare_left(v, a.lhs);
            if (a.rhs.kind != RightConcept::Kind::Bottom) declare_left(v, a.rhs.c);
            break;
        case Axiom::Kind::RoleIncl:
        case Axiom::Kind::Dis:
        case Axiom::Kind::Inv:
            v.declare(a.r1.name, NameKind::Role);
            v.declare(a.r2.name, NameKind::Role);
            break;
        case Axiom::Kind::Irr:
        case Axiom::Kind::Ref:
            v.declare(a.r1.name, NameKind::Role);
            break;
    }
}

void declare_assertion(Vocabulary& v, const Assertion& a) {
    if (a.kind == Assertion::Kind::Concept) {
        v.declare(a.pred, NameKind::Concept);
        v.declare(a.a, NameKind::Individual);
    } else {
        v.declare(a.pred, NameKind::Role);
        v.declare(a.a, NameKind::Individual);
        v.declare(a.b, NameKind::Individual);
    }
}

}  // namespace

void DKB::declare_used_names() {
    for (const auto& a : strict) declare_axiom(vocab, a);
    for (const auto& d : defeasible) declare_axiom(vocab, d.ax);
    for (const auto& a : abox) declare_assertion(vocab, a);
    for (const auto& d : def_abox) declare_assertion(vocab, d.as);
}

DKB DKB::strict_part() const {
    DKB r = *this;
    r.defeasible.clear();
    r.def_abox.clear();
    r.spans.defeasible.clear();
    r.spans.def_abox.clear();
    return r;
}

std::size_t DKB::size() const {
    return strict.size() + defeasible.size() + abox.size() + def_abox.size() +
           vocab.concepts().size() + vocab.roles().size() + vocab.individuals().size();
}

ClashLiteral ClashLiteral::direct() const {
    ClashLiteral l = *this;
    if (l.is_role && l.role.inverted) {
        std::swap(l.a, l.b);
        l.role.inverted = false;
    }
    return l;
}

// ---------------------------------------------------------------------------
// validation

namespace {

struct Validator {
    const DKB& k;
    ValidationReport rep;

    void error(std::string msg, const std::vector<SourceSpan>& spans, std::size_t i) {
        rep.errors.push_back({std::move(msg), i < spans.size() ? std::optional(spans[i]) : std::nullopt});
    }

    void name(const std::string& n, NameKind kind, const std::vector<SourceSpan>& spans, std::size_t i) {
        static const char* kinds[] = {"concept", "role", "individual"};
        if (n.empty()) {
            error("empty name", spans, i);
            return;
        }
        if (!k.vocab.has(n, kind)) {
            error("undeclared " + std::string(kinds[int(kind)]) + " '" + n + "'", spans, i);
        }
        if (Vocabulary::is_reserved(n) && !k.vocab.generated().count(n))
            error("name '" + n + "' uses a reserved prefix", spans, i);
    }

    void left(const LeftConcept& c, const std::vector<SourceSpan>& s, std::size_t i) {
        name(c.name, c.kind == LeftConcept::Kind::Atomic ? NameKind::Concept : NameKind::Role, s, i);
    }

    void axiom(const Axiom& a, const std::vector<SourceSpan>& s, std::size_t i) {
        switch (a.kind) {
            case Axiom::Kind::ConceptIncl:
                left(a.lhs, s, i);
                if (a.rhs.kind != RightConcept::Kind::Bottom) left(a.rhs.c, s, i);
                break;
            case Axiom::Kind::RoleIncl:
            case Axiom::Kind::Dis:
                name(a.r1.name, NameKind::Role, s, i);
                name(a.r2.name, NameKind::Role, s, i);
                break;
            case Axiom::Kind::Inv:
                if (a.r1.inverted || a.r2.inverted) error("Inv takes role names only", s, i);
                name(a.r1.name, NameKind::Role, s, i);
                name(a.r2.name, NameKind::Role, s, i);
                break;
            case Axiom::Kind::Irr:
                if (a.r1.inverted) error("Irr takes a role name only", s, i);
                name(a.r1.name, NameKind::Role, s, i);
                break;
            case Axiom::Kind::Ref:
                error("reflexivity unsupported", s, i);
                break;
        }
    }

    void assertion(const Assertion& a, const std::vector<SourceSpan>& s, std::size_t i) {
        if (a.kind == Assertion::Kind::Concept) {
            name(a.pred, NameKind::Concept, s, i);
            name(a.a, NameKind::Individual, s, i);
        } else {
            name(a.pred, NameKind::Role, s, i);
            name(a.a, NameKind::Individual, s, i);
            name(a.b, NameKind::Individual, s, i);
        }
    }

    template <class T>
    void duplicates(const std::vector<T>& xs, const char* what) {
        std::set<T> seen;
        for (const auto& x : xs)
            if (!seen.insert(x).second) rep.warnings.push_back({std::string("duplicate ") + what, std::nullopt});
    }
};

}  // namespace

ValidationReport validate_dkb(const DKB& k) {
    Validator v{k, {}};
    for (std::size_t i = 0; i < k.strict.size(); ++i) v.axiom(k.strict[i], k.spans.strict, i);
    for (std::size_t i = 0; i < k.defeasible.size(); ++i) v.axiom(k.defeasible[i].ax, k.spans.defeasible, i);
    for (std::size_t i = 0; i < k.abox.size(); ++i) v.assertion(k.abox[i], k.spans.abox, i);
    for (std::size_t i = 0; i < k.def_abox.size(); ++i) v.assertion(k.def_abox[i].as, k.spans.def_abox, i);

    std::set<std::string> ids;
    for (const auto& d : k.defeasible)
        if (!ids.insert(d.id).second) v.rep.errors.push_back({"duplicate defeasible id '" + d.id + "'", {}});
    for (const auto& d : k.def_abox)
        if (!ids.insert(d.id).second) v.rep.errors.push_back({"duplicate defeasible id '" + d.id + "'", {}});

    v.duplicates(k.strict, "axiom");
    std::vector<Axiom> dax;
    for (const auto& d : k.defeasible) dax.push_back(d.ax);
    v.duplicates(dax, "defeasible axiom");
    v.duplicates(k.abox, "assertion");
    if (!k.una) v.rep.warnings.push_back({"unique name assumption disabled; reasoning is not supported", {}});
    return v.rep;
}

// ---------------------------------------------------------------------------
// clashing sets

std::vector<ClashingSet> minimal_clashing_sets(const Axiom& alpha, const std::vector<std::string>& args) {
    if (alpha.kind == Axiom::Kind::Ref) throw Error("unsupported axiom shape: reflexivity");
    if (int(args.size()) != alpha.arity())
        throw Error("clashing assumption arity mismatch: expected " + std::to_string(alpha.arity()));

    using CL = ClashLiteral;
    switch (alpha.kind) {
        case Axiom::Kind::ConceptIncl: {
            const auto& e = args[0];
            ClashingSet s;
            s.elements.push_back(CL::concept_lit(alpha.lhs, e, true));
            switch (alpha.rhs.kind) {
                case RightConcept::Kind::Atomic:
                case RightConcept::Kind::Exists:
                    s.elements.push_back(CL::concept_lit(alpha.rhs.c, e, false));
                    break;
                case RightConcept::Kind::Not:
                    s.elements.push_back(CL::concept_lit(alpha.rhs.c, e, true));
                    break;
                case RightConcept::Kind::Bottom: break;
            }
            return {s};
        }
        case Axiom::Kind::RoleIncl:
            return {{{CL::role_lit(alpha.r1, args[0], args[1], true), CL::role_lit(alpha.r2, args[0], args[1], false)}}};
        case Axiom::Kind::Dis:
            return {{{CL::role_lit(alpha.r1, args[0], args[1], true), CL::role_lit(alpha.r2, args[0], args[1], true)}}};
        case Axiom::Kind::Inv:
            return {{{CL::role_lit(alpha.r1, args[0], args[1], true), CL::role_lit(alpha.r2, args[1], args[0], false)}},
                    {{CL::role_lit(alpha.r1, args[0], args[1], false), CL::role_lit(alpha.r2, args[1], args[0], true)}}};
        case Axiom::Kind::Irr:
            return {{{CL::role_lit(alpha.r1, args[0], args[0], true)}}};
        case Axiom::Kind::Ref: break;
    }
    throw Error("unsupported axiom shape");
}

std::vector<ClashingSet> minimal_clashing_sets(const Assertion& alpha) {
    Assertion n = alpha.negated();
    if (n.kind == Assertion::Kind::Concept)
        return {{{ClashLiteral::concept_lit(LeftConcept::atomic(n.pred), n.a, n.positive)}}};
    return {{{ClashLiteral::role_lit({n.pred}, n.a, n.b, n.positive)}}};
}

// ---------------------------------------------------------------------------
// first-order instantiation

std::string skolem(const std::string& role, bool inverted, const std::string& term) {
    return "f_" + role + (inverted ? "^-" : "") + "(" + term + ")";
}

std::string inverse_role_name(const std::string& role) { return "_nf_" + role + "_inv"; }

std::string exists_concept_name(const RoleExpr& r) {
    return "_ex_" + (r.inverted ? inverse_role_name(r.name) : r.name);
}

namespace {

GroundLit role_atom(const RoleExpr& r, const std::string& x, const std::string& y, bool pos = true) {
    if (r.inverted) return {r.name, {y, x}, pos, false};
    return {r.name, {x, y}, pos, false};
}

GroundLit beta(const LeftConcept& c, const std::string& e, const std::string& var, bool pos = true) {
    if (c.kind == LeftConcept::Kind::Atomic) return {c.name, {e}, pos, false};
    return role_atom(c.role(), e, var, pos);
}

}  // namespace

std::vector<GroundClause> instantiate_axiom(const Axiom& alpha, const std::vector<std::string>& args) {
    if (alpha.kind == Axiom::Kind::Ref) throw Error("unsupported axiom shape: reflexivity");
    if (int(args.size()) != alpha.arity())
        throw Error("instantiation arity mismatch: expected " + std::to_string(alpha.arity()));

    switch (alpha.kind) {
        case Axiom::Kind::ConceptIncl: {
            const auto& e = args[0];
            GroundClause c;
            c.body = beta(alpha.lhs, e, "?y");
            switch (alpha.rhs.kind) {
                case RightConcept::Kind::Atomic: c.head = beta(alpha.rhs.c, e, ""); break;
                case RightConcept::Kind::Not: c.head = beta(alpha.rhs.c, e, "?z", false); break;
                case RightConcept::Kind::Exists: {
                    auto r = alpha.rhs.c.role();
                    c.head = role_atom(r, e, skolem(r.name, r.inverted, e));
                    break;
                }
                case RightConcept::Kind::Bottom: c.head = {"false", {}, false, true}; break;
            }
            return {c};
        }
        case Axiom::Kind::RoleIncl: {
            const auto &x = args[0], &y = args[1];
            return {{role_atom(alpha.r1, x, y), role_atom(alpha.r2, x, y)}};
        }
        case Axiom::Kind::Dis: {
            const auto &x = args[0], &y = args[1];
            return {{role_atom(alpha.r1, x, y), role_atom(alpha.r2, x, y, false)},
                    {role_atom(alpha.r2, x, y), role_atom(alpha.r1, x, y, false)}};
        }
        case Axiom::Kind::Inv: {
            const auto &x = args[0], &y = args[1];
            return {{role_atom(alpha.r1, x, y), role_atom(alpha.r2, y, x)},
                    {role_atom(alpha.r2, y, x), role_atom(alpha.r1, x, y)}};
        }
        case Axiom::Kind::Irr:
            return {{std::nullopt, role_atom(alpha.r1, args[0], args[0], false)}};
        case Axiom::Kind::Ref: break;
    }
    throw Error("unsupported axiom shape");
}

std::string to_string(const GroundLit& l) {
    if (l.falsum) return "false";
    std::string s = l.positive ? "" : "¬";
    s += l.pred + "(";
    for (std::size_t i = 0; i < l.args.size(); ++i) s += (i ? "," : "") + l.args[i];
    return s + ")";
}

std::string to_string(const GroundClause& c) {
    if (!c.body) return to_string(c.head);
    return to_string(*c.body) + " → " + to_string(c.head);
}

// ---------------------------------------------------------------------------
// rendering

namespace {

// Generated bridge concepts print as the existential they stand for.
std::string concept_name(const std::string& n) {
    if (n == "_nf_bot") return "⊥";
    if (n.rfind("_ex_", 0) == 0) {
        std::string r = n.substr(4);
        if (r.rfind("_nf_", 0) == 0 && r.size() > 8 && r.compare(r.size() - 4, 4, "_inv") == 0)
            return "∃" + r.substr(4, r.size() - 8) + "⁻";
        return "∃" + r;
    }
    return n;
}

}  // namespace

std::string pretty(const RoleExpr& r) { return r.name + (r.inverted ? "⁻" : ""); }

std::string pretty(const LeftConcept& c) {
    if (c.kind == LeftConcept::Kind::Atomic) return concept_name(c.name);
    return "∃" + pretty(c.role());
}

std::string pretty(const RightConcept& c) {
    switch (c.kind) {
        case RightConcept::Kind::Atomic:
        case RightConcept::Kind::Exists: return pretty(c.c);
        case RightConcept::Kind::Not: return "¬" + pretty(c.c);
        case RightConcept::Kind::Bottom: return "⊥";
    }
    return "?";
}

std::string pretty(const Axiom& a) {
    switch (a.kind) {
        case Axiom::Kind::ConceptIncl: return pretty(a.lhs) + " ⊑ " + pretty(a.rhs);
        case Axiom::Kind::RoleIncl: return pretty(a.r1) + " ⊑ " + pretty(a.r2);
        case Axiom::Kind::Dis: return "Dis(" + pretty(a.r1) + ", " + pretty(a.r2) + ")";
        case Axiom::Kind::Inv: return "Inv(" + a.r1.name + ", " + a.r2.name + ")";
        case Axiom::Kind::Irr: return "Irr(" + a.r1.name + ")";
        case Axiom::Kind::Ref: return "Ref(" + a.r1.name + ")";
    }
    return "?";
}

std::string pretty(const Assertion& a) {
    std::string s = a.positive ? "" : "¬";
    if (a.kind == Assertion::Kind::Concept) return s + concept_name(a.pred) + "(" + a.a + ")";
    return s + a.pred + "(" + a.a + ", " + a.b + ")";
}

std::string pretty(const ClashLiteral& l) {
    std::string s = l.positive ? "" : "¬";
    if (l.is_role) return s + pretty(l.role) + "(" + l.a + ", " + l.b + ")";
    return s + pretty(l.cls) + "(" + l.a + ")";
}

std::string pretty(const ClashingSet& s) {
    std::string r = "{";
    for (std::size_t i = 0; i < s.elements.size(); ++i) r += (i ? ", " : "") + pretty(s.elements[i]);
    return r + "}";
}

std::string pretty(const ClashingAssumption& c, const DKB& k) {
    std::string what = c.axiom_id;
    if (auto d = k.find_defeasible(c.axiom_id)) what = pretty(d->ax);
    else if (auto da = k.find_defeasible_assertion(c.axiom_id)) what = pretty(da->as);
    std::string args;
    for (std::size_t i = 0; i < c.args.size(); ++i) args += (i ? ", " : "") + c.args[i];
    if (c.args.size() > 1) args = "(" + args + ")";
    return what + " @ " + args;
}

}  // namespace dkb
