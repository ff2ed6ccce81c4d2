#include "dkb/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "dkb/safety.hpp"

namespace dkb {

int LeastCASModel::term(const std::string& name) const {
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].name == name) return int(i);
    return -1;
}

bool LeastCASModel::holds(const OLit& l) const { return std::find(literals.begin(), literals.end(), l) != literals.end(); }

bool LeastCASModel::holds(const ClashLiteral& raw) const {
    ClashLiteral l = raw.direct();
    OLit o;
    o.positive = l.positive;
    o.is_role = l.is_role;
    o.a = term(l.a);
    if (o.a < 0) return false;
    if (l.is_role) {
        o.role = l.role.name;
        o.b = term(l.b);
        if (o.b < 0) return false;
    } else {
        o.cls = l.cls;
    }
    return holds(o);
}

bool LeastCASModel::holds(const Assertion& a) const {
    if (a.kind == Assertion::Kind::Concept) return holds(ClashLiteral::concept_lit(LeftConcept::atomic(a.pred), a.a, a.positive));
    return holds(ClashLiteral::role_lit({a.pred}, a.a, a.b, a.positive));
}

std::string LeastCASModel::render(const OLit& l) const {
    std::string s = l.positive ? "" : "not ";
    if (l.is_role) return s + l.role + "(" + terms[l.a].name + "," + terms[l.b].name + ")";
    if (l.cls.kind == LeftConcept::Kind::Atomic) return s + l.cls.name + "(" + terms[l.a].name + ")";
    return s + "exists " + l.cls.name + (l.cls.inverted ? "^-" : "") + "(" + terms[l.a].name + ")";
}

std::vector<std::string> LeastCASModel::rendered() const {
    std::vector<std::string> out;
    for (const auto& l : literals) out.push_back(render(l));
    std::sort(out.begin(), out.end());
    return out;
}

int default_depth(const DKB& k) {
    ChainBound b = classify(k).chain_bound;
    return b.unbounded ? 3 : b.n;
}

std::vector<ClashingAssumption> candidate_assumptions(const DKB& k) {
    std::vector<ClashingAssumption> out;
    const auto& ind = k.vocab.individuals();
    for (const auto& d : k.defeasible) {
        if (d.ax.arity() == 1) {
            for (const auto& a : ind) out.push_back({d.id, {a}});
        } else {
            for (const auto& a : ind)
                for (const auto& b : ind) out.push_back({d.id, {a, b}});
        }
    }
    for (const auto& d : k.def_abox) out.push_back({d.id, {}});
    return out;
}

// ---------------------------------------------------------------------------
// chase

namespace {

class Chase {
public:
    Chase(const DKB& k, const Chi& chi, int depth) : k_(k), chi_(chi) {
        m_.chi = chi;
        m_.depth = depth;
        for (const auto& a : k.vocab.individuals()) named(a);
    }

    LeastCASModel run(const std::vector<ClashLiteral>& added) {
        for (std::size_t i = 0; i < k_.abox.size(); ++i) assertion(k_.abox[i], "abox", int(i));
        for (std::size_t i = 0; i < k_.def_abox.size(); ++i) {
            const auto& d = k_.def_abox[i];
            if (chi_.count({d.id, {}})) continue;
            assertion(d.as, "defeasible-abox", int(i));
        }
        for (const auto& l : added) add_clash_literal(l);
        while (!queue_.empty()) {
            int i = queue_.front();
            queue_.pop_front();
            process(i);
        }
        return std::move(m_);
    }

private:
    const DKB& k_;
    const Chi& chi_;
    LeastCASModel m_;
    std::map<OLit, int> index_;
    std::map<std::tuple<int, std::string, bool, bool>, int> successors_;
    std::deque<int> queue_;

    int named(const std::string& a) {
        int t = m_.term(a);
        if (t >= 0) return t;
        m_.terms.push_back({a, 0, -1, {}});
        return int(m_.terms.size()) - 1;
    }

    int successor(int t, const RoleExpr& r, bool witness) {
        auto key = std::make_tuple(t, r.name, r.inverted, witness);
        auto it = successors_.find(key);
        if (it != successors_.end()) return it->second;
        std::string name = witness ? "w_" + r.name + (r.inverted ? "^-" : "") + "(" + m_.terms[t].name + ")"
                                   : skolem(r.name, r.inverted, m_.terms[t].name);
        m_.terms.push_back({name, m_.terms[t].depth + 1, t, r});
        int id = int(m_.terms.size()) - 1;
        successors_[key] = id;
        return id;
    }

    bool is_named(int t) const { return m_.terms[t].depth == 0; }

    bool excepted(const std::string& id, const std::vector<int>& args) const {
        if (id.empty()) return false;
        ClashingAssumption c{id, {}};
        for (int a : args) {
            if (!is_named(a)) return false;
            c.args.push_back(m_.terms[a].name);
        }
        return chi_.count(c) > 0;
    }

    void add(OLit l, Derivation d) {
        if (index_.count(l)) return;
        int i = int(m_.literals.size());
        m_.literals.push_back(l);
        index_[l] = i;
        d.lit = i;
        m_.derivations.push_back(std::move(d));
        OLit c = l;
        c.positive = !c.positive;
        auto it = index_.find(c);
        if (it != index_.end() && m_.status == ModelStatus::Consistent) {
            m_.status = ModelStatus::Inconsistent;
            m_.clash = m_.render(m_.literals[it->second]) + " / " + m_.render(l);
        }
        if (l.positive) queue_.push_back(i);
    }

    static OLit unary(const LeftConcept& c, int t, bool pos = true) {
        OLit l;
        l.positive = pos;
        l.cls = c;
        l.a = t;
        return l;
    }

    static OLit binary(const std::string& r, int x, int y, bool pos = true) {
        OLit l;
        l.positive = pos;
        l.is_role = true;
        l.role = r;
        l.a = x;
        l.b = y;
        return l;
    }

    // Role expression r holding on (x, y), stored direct.
    static OLit role_expr(const RoleExpr& r, int x, int y, bool pos = true) {
        return r.inverted ? binary(r.name, y, x, pos) : binary(r.name, x, y, pos);
    }

    void falsum(const std::string& why) {
        if (m_.status == ModelStatus::Consistent) {
            m_.status = ModelStatus::Inconsistent;
            m_.clash = why;
        }
    }

    void assertion(const Assertion& a, const std::string& kind, int idx) {
        Derivation d{-1, kind, idx, {}, {}};
        if (a.kind == Assertion::Kind::Concept) {
            add(unary(LeftConcept::atomic(a.pred), named(a.a), a.positive), d);
        } else {
            add(binary(a.pred, named(a.a), named(a.b), a.positive), d);
        }
    }

    void add_clash_literal(const ClashLiteral& raw) {
        ClashLiteral l = raw.direct();
        Derivation d{-1, "added", -1, {}, {}};
        if (l.is_role) {
            add(binary(l.role.name, named(l.a), named(l.b), l.positive), d);
            return;
        }
        int t = named(l.a);
        if (l.cls.kind == LeftConcept::Kind::Exists && l.positive) {
            int w = successor(t, l.cls.role(), true);
            add(role_expr(l.cls.role(), t, w), d);
            return;
        }
        add(unary(l.cls, t, l.positive), d);
    }

    // Applies a concept inclusion to a term where its left side holds.
    void apply_concept(const Axiom& ax, const std::string& kind, int idx, int t, int premise) {
        Derivation d{-1, kind, idx, {t}, {premise}};
        switch (ax.rhs.kind) {
            case RightConcept::Kind::Atomic: add(unary(ax.rhs.c, t), d); break;
            case RightConcept::Kind::Not: add(unary(ax.rhs.c, t, false), d); break;
            case RightConcept::Kind::Bottom: falsum(pretty(ax) + " violated at " + m_.terms[t].name); break;
            case RightConcept::Kind::Exists: {
                RoleExpr r = ax.rhs.c.role();
                if (m_.terms[t].depth < m_.depth) {
                    int f = successor(t, r, false);
                    add(role_expr(r, t, f), d);
                } else {
                    d.kind = "cutoff";
                    add(unary(ax.rhs.c, t), d);
                }
                break;
            }
        }
    }

    template <class F>
    void each_axiom(F&& f) {
        for (std::size_t i = 0; i < k_.strict.size(); ++i) f(k_.strict[i], std::string(), "strict", int(i));
        for (std::size_t i = 0; i < k_.defeasible.size(); ++i)
            f(k_.defeasible[i].ax, k_.defeasible[i].id, "defeasible", int(i));
    }

    void process(int i) {
        OLit l = m_.literals[i];
        if (!l.is_role) {
            each_axiom([&](const Axiom& ax, const std::string& id, const char* kind, int idx) {
                if (ax.kind != Axiom::Kind::ConceptIncl || ax.lhs != l.cls) return;
                if (excepted(id, {l.a})) return;
                apply_concept(ax, kind, idx, l.a, i);
            });
            return;
        }
        // R(t,u) gives exists R(t) and exists R^-(u)
        add(unary(LeftConcept::exists(l.role), l.a), {-1, "exists-intro", -1, {l.a, l.b}, {i}});
        add(unary(LeftConcept::exists(l.role, true), l.b), {-1, "exists-intro", -1, {l.a, l.b}, {i}});
        each_axiom([&](const Axiom& ax, const std::string& id, const char* kind, int idx) {
            auto as_expr = [&](const RoleExpr& r) {
                return r.inverted ? std::make_pair(l.b, l.a) : std::make_pair(l.a, l.b);
            };
            switch (ax.kind) {
                case Axiom::Kind::RoleIncl:
                    if (ax.r1.name == l.role) {
                        auto [x, y] = as_expr(ax.r1);
                        if (!excepted(id, {x, y})) add(role_expr(ax.r2, x, y), {-1, kind, idx, {x, y}, {i}});
                    }
                    break;
                case Axiom::Kind::Dis:
                    if (ax.r1.name == l.role) {
                        auto [x, y] = as_expr(ax.r1);
                        if (!excepted(id, {x, y})) add(role_expr(ax.r2, x, y, false), {-1, kind, idx, {x, y}, {i}});
                    }
                    if (ax.r2.name == l.role) {
                        auto [x, y] = as_expr(ax.r2);
                        if (!excepted(id, {x, y})) add(role_expr(ax.r1, x, y, false), {-1, kind, idx, {x, y}, {i}});
                    }
                    break;
                case Axiom::Kind::Inv:
                    // instance (x,y) ties r1(x,y) to r2(y,x)
                    if (ax.r1.name == l.role) {
                        auto [x, y] = as_expr(ax.r1);
                        if (!excepted(id, {x, y})) add(role_expr(ax.r2, y, x), {-1, kind, idx, {x, y}, {i}});
                    }
                    if (ax.r2.name == l.role) {
                        auto [y, x] = as_expr(ax.r2);
                        if (!excepted(id, {x, y})) add(role_expr(ax.r1, x, y), {-1, kind, idx, {x, y}, {i}});
                    }
                    break;
                case Axiom::Kind::Irr:
                    if (ax.r1.name == l.role && l.a == l.b && !excepted(id, {l.a}))
                        add(binary(l.role, l.a, l.a, false), {-1, kind, idx, {l.a}, {i}});
                    break;
                default: break;
            }
        });
        // exists-valued left sides are handled when the exists literal is processed
    }
};

}  // namespace

LeastCASModel least_cas_model(const DKB& k, const Chi& chi, int depth, const std::vector<ClashLiteral>& added) {
    Chase c(k, chi, depth);
    return c.run(added);
}

// ---------------------------------------------------------------------------
// justification

namespace {

std::vector<ClashingSet> clashing_sets_for(const DKB& k, const ClashingAssumption& c) {
    if (const auto* d = k.find_defeasible(c.axiom_id)) return minimal_clashing_sets(d->ax, c.args);
    if (const auto* d = k.find_defeasible_assertion(c.axiom_id)) return minimal_clashing_sets(d->as);
    throw Error("unknown defeasible statement '" + c.axiom_id + "'");
}

// Justification check of one clashing set against the least model of chi.
bool derivable(const DKB& k, const Chi& chi, int depth, const LeastCASModel& m, const ClashingSet& s) {
    for (const auto& e : s.elements)
        if (e.positive && !m.holds(e)) return false;
    for (const auto& e : s.elements) {
        if (e.positive) continue;
        ClashLiteral beta = e;
        beta.positive = true;
        if (least_cas_model(k, chi, depth, {beta}).consistent()) return false;
    }
    return true;
}

std::optional<ClashingSet> justify_one(const DKB& k, const Chi& chi, int depth, const LeastCASModel& m,
                                       const ClashingAssumption& c) {
    for (const auto& s : clashing_sets_for(k, c))
        if (derivable(k, chi, depth, m, s)) return s;
    return std::nullopt;
}

}  // namespace

JustificationResult is_justified(const DKB& k, const Chi& chi, int depth) {
    LeastCASModel m = least_cas_model(k, chi, depth);
    if (!m.consistent()) throw Error("is_justified: least CAS-model is inconsistent");
    JustificationResult r;
    for (const auto& c : chi) {
        auto via = justify_one(k, chi, depth, m, c);
        if (!via) r.justified = false;
        r.evidence.push_back({c, via});
    }
    return r;
}

std::vector<Chi> oracle_justified_chis(const DKB& k, const OracleOptions& opt) {
    int depth = opt.depth ? *opt.depth : default_depth(k);
    // Fewer exceptions only add facts, so a candidate that cannot be
    // justified when it is the sole exception never can be.
    std::vector<ClashingAssumption> viable;
    for (const auto& c : candidate_assumptions(k)) {
        Chi solo{c};
        LeastCASModel m = least_cas_model(k, solo, depth);
        if (justify_one(k, solo, depth, m, c)) viable.push_back(c);
    }
    if (viable.size() > opt.budget)
        throw BudgetExceeded("oracle budget exceeded: " + std::to_string(viable.size()) + " viable candidates (limit " +
                             std::to_string(opt.budget) + ")");

    std::vector<Chi> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << viable.size()); ++mask) {
        Chi chi;
        for (std::size_t i = 0; i < viable.size(); ++i)
            if ((mask >> i) & 1) chi.insert(viable[i]);
        LeastCASModel m = least_cas_model(k, chi, depth);
        if (!m.consistent()) continue;
        bool ok = true;
        for (const auto& c : chi)
            if (!justify_one(k, chi, depth, m, c)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(std::move(chi));
    }
    std::sort(out.begin(), out.end());
    for (const auto& a : out)
        for (const auto& b : out)
            if (a != b && std::includes(a.begin(), a.end(), b.begin(), b.end()))
                throw Error("justified clashing-assumption sets do not form an antichain");
    return out;
}

bool oracle_entails(const DKB& k, const std::vector<Chi>& chis, const Assertion& q, int depth) {
    for (const auto& chi : chis) {
        if (q.positive) {
            if (!least_cas_model(k, chi, depth).holds(q)) return false;
        } else {
            Assertion p = q.negated();
            ClashLiteral beta = p.kind == Assertion::Kind::Concept
                                    ? ClashLiteral::concept_lit(LeftConcept::atomic(p.pred), p.a, true)
                                    : ClashLiteral::role_lit({p.pred}, p.a, p.b, true);
            if (least_cas_model(k, chi, depth, {beta}).consistent()) return false;
        }
    }
    return true;
}

bool oracle_entails(const DKB& k, const Assertion& q, const OracleOptions& opt) {
    int depth = opt.depth ? *opt.depth : default_depth(k);
    return oracle_entails(k, oracle_justified_chis(k, opt), q, depth);
}

std::vector<std::string> unsatisfiable_names(const DKB& k, std::optional<int> depth) {
    DKB t = k.strict_part();
    t.abox.clear();
    for (const auto& d : k.defeasible) t.strict.push_back(d.ax);
    int d = depth ? *depth : default_depth(t);
    std::string probe = "_aux_probe";
    t.vocab.declare(probe, NameKind::Individual);
    t.vocab.mark_generated(probe);
    auto unsat = [&](const ClashLiteral& l) { return !least_cas_model(t, {}, d, {l}).consistent(); };
    std::vector<std::string> out;
    for (const auto& c : k.vocab.concepts())
        if (unsat(ClashLiteral::concept_lit(LeftConcept::atomic(c), probe, true))) out.push_back(c);
    for (const auto& r : k.vocab.roles()) {
        if (unsat(ClashLiteral::concept_lit(LeftConcept::exists(r), probe, true))) out.push_back("exists " + r);
        if (unsat(ClashLiteral::concept_lit(LeftConcept::exists(r, true), probe, true))) out.push_back("exists " + r + "^-");
        if (unsat(ClashLiteral::role_lit({r}, probe, probe, true))) out.push_back(r + " (reflexive)");
    }
    return out;
}

bool oracle_satisfiable(const DKB& k, std::optional<int> depth) {
    DKB s = k.strict_part();
    int d = depth ? *depth : default_depth(s);
    return least_cas_model(s, {}, d).consistent();
}

}  // namespace dkb
