#include "dkb/normalize.hpp"

#include <set>

#include "dkb/dkbtext.hpp"

namespace dkb {

namespace {

const char* kBottom = "_nf_bot";
const char* kBottomFlag = "_nf_f";

bool is_bridge_exists_left(const Axiom& a) {
    return a.lhs.kind == LeftConcept::Kind::Exists && !a.lhs.inverted &&
           a.rhs.kind == RightConcept::Kind::Atomic && a.rhs.c.name == exists_concept_name({a.lhs.name});
}

bool is_bridge_exists_right(const Axiom& a) {
    return a.lhs.kind == LeftConcept::Kind::Atomic && a.rhs.kind == RightConcept::Kind::Exists &&
           !a.rhs.c.inverted && a.lhs.name == exists_concept_name({a.rhs.c.name});
}

class Normalizer {
public:
    explicit Normalizer(const DKB& in) : in_(in) {
        out_.vocab = in.vocab;
        out_.una = in.una;
    }

    Normalized run() {
        for (std::size_t i = 0; i < in_.strict.size(); ++i) {
            begin(serialize_axiom(in_.strict[i]));
            strict_axiom(in_.strict[i]);
        }
        for (std::size_t i = 0; i < in_.defeasible.size(); ++i) {
            const auto& d = in_.defeasible[i];
            begin("D: " + serialize_axiom(d.ax));
            defeasible_axiom(d, i + 1);
        }
        for (std::size_t i = 0; i < in_.abox.size(); ++i) {
            begin(serialize_assertion(in_.abox[i]));
            assertion(in_.abox[i], i + 1);
        }
        for (std::size_t i = 0; i < in_.def_abox.size(); ++i) {
            begin("D: " + serialize_assertion(in_.def_abox[i].as));
            defeasible_assertion(in_.def_abox[i], i + 1);
        }
        for (const auto& [ax, step] : pending_) add_strict(ax, step);
        return {std::move(out_), std::move(trace_)};
    }

private:
    const DKB& in_;
    DKB out_;
    NormalizationTrace trace_;
    std::set<Axiom> strict_seen_, def_seen_;
    std::set<Assertion> abox_seen_;
    std::vector<std::pair<Axiom, std::size_t>> pending_;
    std::set<Axiom> pending_seen_;

    std::size_t step() const { return trace_.rewrite_steps.size() - 1; }

    void begin(std::string src) { trace_.rewrite_steps.push_back({std::move(src), {}}); }

    void add_strict(const Axiom& a, std::size_t st) {
        if (!strict_seen_.insert(a).second) return;
        out_.strict.push_back(a);
        trace_.rewrite_steps[st].produced.push_back(serialize_axiom(a));
    }
    void add_strict(const Axiom& a) { add_strict(a, step()); }

    void add_pending(const Axiom& a) {
        if (strict_seen_.count(a) || !pending_seen_.insert(a).second) return;
        pending_.push_back({a, step()});
    }

    void add_defeasible(const Axiom& a, const std::string& id) {
        if (!def_seen_.insert(a).second) return;
        out_.defeasible.push_back({a, id});
        trace_.rewrite_steps[step()].produced.push_back("D: " + serialize_axiom(a));
    }

    void add_assertion(const Assertion& a) {
        if (!abox_seen_.insert(a).second) return;
        out_.abox.push_back(a);
        trace_.rewrite_steps[step()].produced.push_back(serialize_assertion(a));
    }

    std::string generated(std::string name, NameKind kind) {
        if (!out_.vocab.kind_of(name)) {
            out_.vocab.declare(name, kind);
            out_.vocab.mark_generated(name);
            trace_.introduced_symbols[name] = trace_.rewrite_steps[step()].source;
        }
        return name;
    }

    // Fresh symbol derived from the statement's position.
    std::string fresh(const std::string& tag, std::size_t index, const std::string& base, NameKind kind) {
        std::string name = "_nf_" + tag + std::to_string(index) + "_" + base;
        while (out_.vocab.kind_of(name)) name += "_";
        return generated(name, kind);
    }

    std::string role(const RoleExpr& r) {
        if (!r.inverted) return r.name;
        std::string inv = generated(inverse_role_name(r.name), NameKind::Role);
        add_pending(Axiom::inv(r.name, inv));
        return inv;
    }

    std::string exists_concept(const RoleExpr& r) {
        std::string rn = role(r);
        std::string a = generated(exists_concept_name({rn}), NameKind::Concept);
        add_pending(Axiom::concept_incl(LeftConcept::exists(rn), RightConcept::atomic(a)));
        add_pending(Axiom::concept_incl(LeftConcept::atomic(a), RightConcept::exists(rn)));
        return a;
    }

    std::string bottom() {
        std::string b = generated(kBottom, NameKind::Concept);
        std::string f = generated(kBottomFlag, NameKind::Concept);
        add_pending(Axiom::subclass(b, f));
        add_pending(Axiom::concept_incl(LeftConcept::atomic(b), RightConcept::negation(LeftConcept::atomic(f))));
        return b;
    }

    std::string left(const LeftConcept& c) {
        if (c.kind == LeftConcept::Kind::Atomic) return c.name;
        return exists_concept(c.role());
    }

    void strict_axiom(const Axiom& a) {
        if (is_normal_axiom(a, false)) {
            add_strict(a);
            if (is_bridge_exists_left(a)) exists_concept({a.lhs.name});
            if (is_bridge_exists_right(a)) exists_concept({a.rhs.c.name});
            if (a.kind == Axiom::Kind::ConceptIncl && a.lhs.name == kBottom) bottom();
            return;
        }
        switch (a.kind) {
            case Axiom::Kind::ConceptIncl: {
                std::string l = left(a.lhs);
                switch (a.rhs.kind) {
                    case RightConcept::Kind::Atomic: add_strict(Axiom::subclass(l, a.rhs.c.name)); break;
                    case RightConcept::Kind::Exists: add_strict(Axiom::subclass(l, exists_concept(a.rhs.c.role()))); break;
                    case RightConcept::Kind::Bottom: add_strict(Axiom::subclass(l, bottom())); break;
                    case RightConcept::Kind::Not:
                        add_strict(Axiom::concept_incl(LeftConcept::atomic(l),
                                                       RightConcept::negation(LeftConcept::atomic(left(a.rhs.c)))));
                        break;
                }
                break;
            }
            case Axiom::Kind::RoleIncl: add_strict(Axiom::role_incl({role(a.r1)}, {role(a.r2)})); break;
            case Axiom::Kind::Dis: add_strict(Axiom::dis({role(a.r1)}, {role(a.r2)})); break;
            case Axiom::Kind::Inv:
            case Axiom::Kind::Irr: add_strict(a); break;
            case Axiom::Kind::Ref: throw Error("reflexivity unsupported");
        }
    }

    void defeasible_axiom(const DefeasibleAxiom& d, std::size_t index) {
        const Axiom& a = d.ax;
        if (is_normal_axiom(a, true)) {
            add_defeasible(a, d.id);
            return;
        }
        switch (a.kind) {
            case Axiom::Kind::ConceptIncl: {
                std::string l = left(a.lhs);
                switch (a.rhs.kind) {
                    case RightConcept::Kind::Atomic: add_defeasible(Axiom::subclass(l, a.rhs.c.name), d.id); break;
                    case RightConcept::Kind::Exists:
                        add_defeasible(Axiom::subclass(l, exists_concept(a.rhs.c.role())), d.id);
                        break;
                    case RightConcept::Kind::Bottom: add_defeasible(Axiom::subclass(l, bottom()), d.id); break;
                    case RightConcept::Kind::Not: {
                        std::string b = left(a.rhs.c);
                        std::string fresh_a = fresh("d", index, b, NameKind::Concept);
                        add_defeasible(Axiom::subclass(l, fresh_a), d.id);
                        add_strict(Axiom::concept_incl(LeftConcept::atomic(b),
                                                       RightConcept::negation(LeftConcept::atomic(fresh_a))));
                        break;
                    }
                }
                break;
            }
            case Axiom::Kind::RoleIncl: add_defeasible(Axiom::role_incl({role(a.r1)}, {role(a.r2)}), d.id); break;
            case Axiom::Kind::Dis: {
                // D(Dis(R,S)) becomes D(R [= R') with Dis(S,R'), the role
                // analogue of the negative inclusion rewrite.
                std::string r = role(a.r1), s = role(a.r2);
                std::string fresh_r = fresh("d", index, s, NameKind::Role);
                add_defeasible(Axiom::role_incl({r}, {fresh_r}), d.id);
                add_strict(Axiom::dis({s}, {fresh_r}));
                break;
            }
            case Axiom::Kind::Inv:
            case Axiom::Kind::Irr: add_defeasible(a, d.id); break;
            case Axiom::Kind::Ref: throw Error("reflexivity unsupported");
        }
    }

    void assertion(const Assertion& a, std::size_t index) {
        if (a.positive) {
            add_assertion(a);
            return;
        }
        if (a.kind == Assertion::Kind::Concept) {
            std::string f = fresh("a", index, a.pred, NameKind::Concept);
            add_assertion(Assertion::concept_of(f, a.a));
            add_strict(Axiom::concept_incl(LeftConcept::atomic(f), RightConcept::negation(LeftConcept::atomic(a.pred))));
        } else {
            std::string f = fresh("a", index, a.pred, NameKind::Role);
            add_assertion(Assertion::role(f, a.a, a.b));
            add_strict(Axiom::dis({a.pred}, {f}));
        }
    }

    void defeasible_assertion(const DefeasibleAssertion& d, std::size_t index) {
        const Assertion& a = d.as;
        if (a.kind == Assertion::Kind::Concept) {
            std::string f = fresh("da", index, a.pred, NameKind::Concept);
            add_assertion(Assertion::concept_of(f, a.a));
            if (a.positive) {
                add_defeasible(Axiom::subclass(f, a.pred), d.id);
            } else {
                std::string g = fresh("da", index, "n" + a.pred, NameKind::Concept);
                add_defeasible(Axiom::subclass(f, g), d.id);
                add_strict(Axiom::concept_incl(LeftConcept::atomic(a.pred), RightConcept::negation(LeftConcept::atomic(g))));
            }
        } else {
            std::string f = fresh("da", index, a.pred, NameKind::Role);
            add_assertion(Assertion::role(f, a.a, a.b));
            if (a.positive) {
                add_defeasible(Axiom::role_incl({f}, {a.pred}), d.id);
            } else {
                std::string g = fresh("da", index, "n" + a.pred, NameKind::Role);
                add_defeasible(Axiom::role_incl({f}, {g}), d.id);
                add_strict(Axiom::dis({a.pred}, {g}));
            }
        }
    }
};

}  // namespace

bool is_normal_axiom(const Axiom& a, bool defeasible) {
    switch (a.kind) {
        case Axiom::Kind::ConceptIncl: {
            if (a.lhs.kind == LeftConcept::Kind::Atomic && a.rhs.kind == RightConcept::Kind::Atomic) return true;
            if (defeasible) return false;
            if (a.lhs.kind == LeftConcept::Kind::Atomic && a.rhs.kind == RightConcept::Kind::Not &&
                a.rhs.c.kind == LeftConcept::Kind::Atomic)
                return true;
            return is_bridge_exists_left(a) || is_bridge_exists_right(a);
        }
        case Axiom::Kind::RoleIncl: return !a.r1.inverted && !a.r2.inverted;
        case Axiom::Kind::Dis: return !defeasible && !a.r1.inverted && !a.r2.inverted;
        case Axiom::Kind::Inv:
        case Axiom::Kind::Irr: return true;
        case Axiom::Kind::Ref: return false;
    }
    return false;
}

bool is_normal_form(const DKB& k) {
    if (!k.def_abox.empty()) return false;
    std::set<Axiom> strict(k.strict.begin(), k.strict.end());
    std::set<std::string> existential;
    for (const auto& a : k.strict) {
        if (!is_normal_axiom(a, false)) return false;
        if (is_bridge_exists_left(a)) existential.insert(a.lhs.name);
        if (is_bridge_exists_right(a)) existential.insert(a.rhs.c.name);
    }
    for (const auto& d : k.defeasible)
        if (!is_normal_axiom(d.ax, true)) return false;
    for (const auto& a : k.abox)
        if (!a.positive) return false;
    for (const auto& r : existential) {
        std::string c = exists_concept_name({r});
        if (!strict.count(Axiom::concept_incl(LeftConcept::exists(r), RightConcept::atomic(c))) ||
            !strict.count(Axiom::concept_incl(LeftConcept::atomic(c), RightConcept::exists(r))))
            return false;
    }
    return true;
}

Normalized normalize(const DKB& k) { return Normalizer(k).run(); }

}  // namespace dkb
