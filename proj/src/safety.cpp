#include "dkb/safety.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "dkb/dkbtext.hpp"
#include "dkb/normalize.hpp"

namespace dkb {

bool AbstractAtom::has_skolem() const {
    return std::find(arg_types.begin(), arg_types.end(), ArgType::Skolem) != arg_types.end();
}

std::string to_string(const AbstractAtom& a) {
    std::string s = a.predicate + "(";
    for (std::size_t i = 0; i < a.arg_types.size(); ++i)
        s += std::string(i ? "," : "") + (a.arg_types[i] == ArgType::Named ? "NAMED" : "SKOLEM");
    return s + ")";
}

std::string to_string(const ChainBound& b) { return b.unbounded ? "unbounded" : std::to_string(b.n); }

namespace {

bool is_generator(const Axiom& a) {
    return a.kind == Axiom::Kind::ConceptIncl && a.lhs.kind == LeftConcept::Kind::Atomic &&
           a.rhs.kind == RightConcept::Kind::Exists;
}

std::vector<Axiom> strict_view(const DKB& k) {
    std::vector<Axiom> all = k.strict;
    for (const auto& d : k.defeasible) all.push_back(d.ax);
    return all;
}

AbstractAtom concept_atom(const std::string& p, ArgType t) { return {p, false, {t}}; }
AbstractAtom role_atom(const std::string& p, ArgType a, ArgType b) { return {p, true, {a, b}}; }

// Does the atom unify with a positive element of a clashing set of d?
bool feeds(const Axiom& d, const AbstractAtom& at) {
    if (!at.has_skolem()) return false;
    std::vector<std::string> args = d.arity() == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    for (const auto& set : minimal_clashing_sets(d, args)) {
        for (const auto& raw : set.elements) {
            if (!raw.positive) continue;
            if (!raw.is_role) {
                if (raw.cls.kind == LeftConcept::Kind::Atomic) {
                    if (!at.is_role && at.predicate == raw.cls.name) return true;
                } else if (at.is_role && at.predicate == raw.cls.name) {
                    if (at.arg_types[raw.cls.inverted ? 1 : 0] == ArgType::Skolem) return true;
                }
                continue;
            }
            ClashLiteral l = raw.direct();
            if (!at.is_role || at.predicate != l.role.name) continue;
            if (l.a == l.b) {
                if (at.arg_types[0] == ArgType::Skolem && at.arg_types[1] == ArgType::Skolem) return true;
            } else {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<AbstractAtom> apply_abstract(const Axiom& a, const AbstractAtom& in) {
    switch (a.kind) {
        case Axiom::Kind::ConceptIncl: {
            if (a.lhs.kind == LeftConcept::Kind::Atomic) {
                if (in.is_role || in.predicate != a.lhs.name) return {};
                if (a.rhs.kind == RightConcept::Kind::Atomic) return {concept_atom(a.rhs.c.name, in.arg_types[0])};
                if (a.rhs.kind == RightConcept::Kind::Exists) {
                    if (a.rhs.c.inverted) return {role_atom(a.rhs.c.name, ArgType::Skolem, in.arg_types[0])};
                    return {role_atom(a.rhs.c.name, in.arg_types[0], ArgType::Skolem)};
                }
                return {};
            }
            if (!in.is_role || in.predicate != a.lhs.name) return {};
            if (a.rhs.kind != RightConcept::Kind::Atomic) return {};
            return {concept_atom(a.rhs.c.name, in.arg_types[a.lhs.inverted ? 1 : 0])};
        }
        case Axiom::Kind::RoleIncl: {
            if (!in.is_role || in.predicate != a.r1.name) return {};
            auto t = in.arg_types;
            if (a.r1.inverted != a.r2.inverted) std::swap(t[0], t[1]);
            return {role_atom(a.r2.name, t[0], t[1])};
        }
        case Axiom::Kind::Inv: {
            std::vector<AbstractAtom> out;
            if (!in.is_role) return out;
            if (in.predicate == a.r1.name) out.push_back(role_atom(a.r2.name, in.arg_types[1], in.arg_types[0]));
            if (in.predicate == a.r2.name) out.push_back(role_atom(a.r1.name, in.arg_types[1], in.arg_types[0]));
            return out;
        }
        default: return {};
    }
}

std::size_t abstract_space_bound(const DKB& k) { return 2 * k.vocab.concepts().size() + 4 * k.vocab.roles().size(); }

AbstractClosure abstract_closure(const DKB& k) {
    if (!is_normal_form(k)) throw NotNormalForm();
    AbstractClosure c;
    std::map<AbstractAtom, int> index;
    std::deque<int> queue;
    auto add = [&](const AbstractAtom& a, int parent_edge) {
        auto [it, inserted] = index.emplace(a, int(c.atoms.size()));
        if (inserted) {
            c.atoms.push_back(a);
            c.parent.push_back(parent_edge);
            queue.push_back(it->second);
        }
        return it->second;
    };
    for (const auto& a : k.abox) {
        if (a.kind == Assertion::Kind::Concept) add(concept_atom(a.pred, ArgType::Named), -1);
        else add(role_atom(a.pred, ArgType::Named, ArgType::Named), -1);
    }
    auto axioms = strict_view(k);
    std::vector<std::string> texts;
    for (const auto& a : axioms) texts.push_back(serialize_axiom(a));

    std::set<std::tuple<int, int, std::size_t>> seen_edges;
    while (!queue.empty()) {
        int from = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < axioms.size(); ++i) {
            AbstractAtom src = c.atoms[from];
            for (const auto& out : apply_abstract(axioms[i], src)) {
                int edge_id = int(c.edges.size());
                auto it = index.find(out);
                int to = it == index.end() ? -1 : it->second;
                if (to >= 0 && seen_edges.count({from, to, i})) continue;
                if (to < 0) to = add(out, edge_id);
                seen_edges.insert({from, to, i});
                c.edges.push_back({from, to, is_generator(axioms[i]), texts[i]});
            }
        }
    }
    return c;
}

SafetyReport check_exception_safe(const DKB& k) {
    AbstractClosure c = abstract_closure(k);
    SafetyReport r;
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
        for (const auto& d : k.defeasible) {
            if (!feeds(d.ax, c.atoms[i])) continue;
            r.exception_safe = false;
            SafetyWitness w;
            w.fed_axiom = serialize_axiom(d.ax);
            for (int at = int(i); at >= 0;) {
                w.chain.push_back(c.atoms[at]);
                int e = c.parent[at];
                if (e < 0) break;
                w.steps.push_back(c.edges[e].axiom);
                at = c.edges[e].from;
            }
            std::reverse(w.chain.begin(), w.chain.end());
            std::reverse(w.steps.begin(), w.steps.end());
            r.witnesses.push_back(std::move(w));
            break;
        }
    }
    return r;
}

namespace {

// Skolem successors created by an existential axiom have a type that
// depends only on the role; the chain graph links each existential role to
// the existential roles that fire on its successors.
struct ChainGraph {
    std::vector<std::string> gens;                 // generator roles, in axiom order
    std::map<std::string, std::set<std::string>> children;
    std::map<std::string, std::set<std::string>> succ_concepts;  // type of a fresh successor
    std::map<std::string, std::set<std::pair<std::string, bool>>> pair_roles;  // (role, forward)
    std::set<std::string> roots;
};

ChainGraph chain_graph(const DKB& k) {
    ChainGraph g;
    auto axioms = strict_view(k);
    std::map<std::string, std::string> bridge;              // role -> concept for exists R [= C
    std::map<std::string, std::vector<std::string>> gen_of;  // concept -> generator roles
    std::multimap<std::string, std::string> sub;            // concept inclusions
    for (const auto& a : axioms) {
        if (a.kind != Axiom::Kind::ConceptIncl) continue;
        if (a.lhs.kind == LeftConcept::Kind::Exists && a.rhs.kind == RightConcept::Kind::Atomic)
            bridge[a.lhs.name] = a.rhs.c.name;
        else if (is_generator(a)) {
            gen_of[a.lhs.name].push_back(a.rhs.c.name);
            if (std::find(g.gens.begin(), g.gens.end(), a.rhs.c.name) == g.gens.end()) g.gens.push_back(a.rhs.c.name);
        } else if (a.lhs.kind == LeftConcept::Kind::Atomic && a.rhs.kind == RightConcept::Kind::Atomic)
            sub.emplace(a.lhs.name, a.rhs.c.name);
    }

    auto pairs = [&](const std::string& r) {
        std::set<std::pair<std::string, bool>> s{{r, true}};
        std::deque<std::pair<std::string, bool>> q{{r, true}};
        while (!q.empty()) {
            auto [role, fwd] = q.front();
            q.pop_front();
            for (const auto& a : axioms) {
                std::vector<std::pair<std::string, bool>> out;
                if (a.kind == Axiom::Kind::RoleIncl && a.r1.name == role) out.push_back({a.r2.name, fwd});
                if (a.kind == Axiom::Kind::Inv) {
                    if (a.r1.name == role) out.push_back({a.r2.name, !fwd});
                    if (a.r2.name == role) out.push_back({a.r1.name, !fwd});
                }
                for (const auto& o : out)
                    if (s.insert(o).second) q.push_back(o);
            }
        }
        return s;
    };
    for (const auto& r : g.gens) g.pair_roles[r] = pairs(r);

    for (const auto& r : g.gens) {
        std::set<std::string> type;
        std::set<std::string> fired;
        std::deque<std::string> q;
        auto add = [&](const std::string& c) {
            if (type.insert(c).second) q.push_back(c);
        };
        // the successor u sits in the second position of the pair (t,u)
        for (const auto& [role, fwd] : g.pair_roles[r])
            if (!fwd && bridge.count(role)) add(bridge[role]);
        while (!q.empty()) {
            std::string c = q.front();
            q.pop_front();
            auto range = sub.equal_range(c);
            for (auto it = range.first; it != range.second; ++it) add(it->second);
            for (const auto& s : gen_of[c]) {
                if (!fired.insert(s).second) continue;
                for (const auto& [role, fwd] : g.pair_roles[s])
                    if (fwd && bridge.count(role)) add(bridge[role]);
            }
        }
        g.children[r] = fired;
        g.succ_concepts[r] = type;
    }

    AbstractClosure c = abstract_closure(k);
    for (const auto& at : c.atoms) {
        if (at.is_role || at.arg_types[0] != ArgType::Named) continue;
        for (const auto& s : gen_of[at.predicate]) g.roots.insert(s);
    }
    return g;
}

}  // namespace

ChainBound check_chain_safety(const DKB& k) {
    if (!is_normal_form(k)) throw NotNormalForm();
    ChainGraph g = chain_graph(k);
    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::map<std::string, int> longest;
    bool cycle = false;
    std::function<int(const std::string&)> dfs = [&](const std::string& r) -> int {
        if (state[r] == 1) {
            cycle = true;
            return 0;
        }
        if (state[r] == 2) return longest[r];
        state[r] = 1;
        int best = 0;
        for (const auto& ch : g.children[r]) best = std::max(best, dfs(ch));
        state[r] = 2;
        return longest[r] = best + 1;
    };
    int n = 0;
    for (const auto& r : g.gens)
        if (g.roots.count(r)) n = std::max(n, dfs(r));
    if (cycle) return {true, 0};
    return {false, n};
}

namespace {

bool recursive_flag(const DKB& k) {
    ChainGraph g = chain_graph(k);
    auto unsafe = [&](const std::string& r) {
        for (const auto& d : k.defeasible) {
            for (const auto& c : g.succ_concepts[r])
                if (feeds(d.ax, concept_atom(c, ArgType::Skolem))) return true;
            for (const auto& [role, fwd] : g.pair_roles[r]) {
                auto at = fwd ? role_atom(role, ArgType::Named, ArgType::Skolem)
                              : role_atom(role, ArgType::Skolem, ArgType::Named);
                if (feeds(d.ax, at)) return true;
            }
        }
        return false;
    };
    auto reach = [&](const std::string& from) {
        std::set<std::string> seen;
        std::deque<std::string> q;
        for (const auto& c : g.children[from])
            if (seen.insert(c).second) q.push_back(c);
        while (!q.empty()) {
            auto r = q.front();
            q.pop_front();
            for (const auto& c : g.children[r])
                if (seen.insert(c).second) q.push_back(c);
        }
        return seen;
    };
    std::set<std::string> reachable;
    for (const auto& r : g.roots) {
        reachable.insert(r);
        for (const auto& x : reach(r)) reachable.insert(x);
    }
    for (const auto& r : reachable) {
        auto from_r = reach(r);
        if (!from_r.count(r)) continue;  // r is not on a cycle
        if (unsafe(r)) return true;
        for (const auto& x : from_r)
            if (unsafe(x)) return true;
    }
    return false;
}

}  // namespace

SafetyReport classify(const DKB& k) {
    DKB n = is_normal_form(k) ? k : normalize(k).dkb;
    SafetyReport r = check_exception_safe(n);
    r.chain_bound = check_chain_safety(n);
    r.recursive = recursive_flag(n);
    return r;
}

std::string render(const SafetyReport& r) {
    std::string s = r.exception_safe ? "exception-safe" : "not exception-safe";
    s += ", chain bound " + to_string(r.chain_bound);
    if (r.recursive) s += ", recursive";
    s += "\n";
    for (const auto& w : r.witnesses) {
        s += "witness for D: " + w.fed_axiom + "\n";
        for (std::size_t i = 0; i < w.chain.size(); ++i) {
            s += "  " + to_string(w.chain[i]);
            if (i > 0) s += "    by " + w.steps[i - 1];
            s += "\n";
        }
    }
    return s;
}

}  // namespace dkb
