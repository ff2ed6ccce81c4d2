#include "dkb/asp.hpp"

#include <algorithm>
#include <functional>

namespace dkb {

int GroundProgram::intern_const(const std::string& c) {
    auto [it, ins] = const_ids_.emplace(c, int(universe.size()));
    if (ins) universe.push_back(c);
    return it->second;
}

int GroundProgram::intern_pred(const std::string& p) {
    auto [it, ins] = pred_ids_.emplace(p, int(preds.size()));
    if (ins) preds.push_back(p);
    return it->second;
}

int GroundProgram::intern(const GLit& l) {
    auto [it, ins] = lit_ids_.emplace(l, int(lits.size()));
    if (ins) lits.push_back(l);
    return it->second;
}

int GroundProgram::find(const GLit& l) const {
    auto it = lit_ids_.find(l);
    return it == lit_ids_.end() ? -1 : it->second;
}

int GroundProgram::find(const DLiteral& g) const {
    auto p = pred_ids_.find(g.atom.pred);
    if (p == pred_ids_.end()) return -1;
    GLit l{p->second, g.strong_neg, {}};
    for (const auto& t : g.atom.args) {
        if (t.is_var()) return -1;
        auto c = const_ids_.find(t.name);
        if (c == const_ids_.end()) return -1;
        l.args.push_back(c->second);
    }
    return find(l);
}

int GroundProgram::complement(int lit) const {
    GLit c = lits[lit];
    c.neg = !c.neg;
    return find(c);
}

std::string GroundProgram::to_string(int lit) const {
    const GLit& l = lits[lit];
    std::string s = (l.neg ? "-" : "") + preds[l.pred];
    if (l.args.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < l.args.size(); ++i) s += (i ? "," : "") + emit_constant(universe[l.args[i]]);
    return s + ")";
}

DLiteral GroundProgram::to_dliteral(int lit) const {
    const GLit& l = lits[lit];
    DLiteral d{{preds[l.pred], {}}, l.neg};
    for (int a : l.args) d.atom.args.push_back(DTerm::constant(universe[a]));
    return d;
}

bool GroundProgram::canonical_less(int a, int b) const {
    const GLit &x = lits[a], &y = lits[b];
    if (x.pred != y.pred) return preds[x.pred] < preds[y.pred];
    if (x.neg != y.neg) return !x.neg;
    return x.args < y.args;
}

// ---------------------------------------------------------------------------
// grounding

namespace {

struct PatTerm {
    int value;  // constant id, or variable slot when var
    bool var;
};

struct Pattern {
    int pred;
    bool neg;
    std::vector<PatTerm> args;
};

struct CompiledRule {
    Pattern head;
    std::vector<Pattern> pos, naf;
    int nvars = 0;
};

void collect_constants(const DLiteral& l, std::set<std::string>& out) {
    for (const auto& t : l.atom.args)
        if (!t.is_var()) out.insert(t.name);
}

}  // namespace

GroundProgram ground(const DProgram& p) {
    GroundProgram g;
    g.overrides = p.overrides;
    for (const auto& c : p.chain) g.intern_const(c);
    std::set<std::string> rest;
    for (const auto& f : p.facts) collect_constants(f, rest);
    for (const auto& r : p.rules) {
        collect_constants(r.head, rest);
        for (const auto& b : r.body_pos) collect_constants(b, rest);
        for (const auto& b : r.body_naf) collect_constants(b, rest);
    }
    for (const auto& c : rest) g.intern_const(c);

    auto compile = [&](const DLiteral& l, std::map<std::string, int>& vars) {
        Pattern pat{g.intern_pred(l.atom.pred), l.strong_neg, {}};
        for (const auto& t : l.atom.args) {
            if (t.is_var()) {
                auto [it, ins] = vars.emplace(t.name, int(vars.size()));
                pat.args.push_back({it->second, true});
            } else {
                pat.args.push_back({g.intern_const(t.name), false});
            }
        }
        return pat;
    };

    std::vector<CompiledRule> rules;
    for (const auto& r : p.rules) {
        if (!rule_is_safe(r)) throw UnsupportedProgram("unsafe rule: " + to_string(r));
        std::map<std::string, int> vars;
        CompiledRule cr;
        for (const auto& b : r.body_pos) cr.pos.push_back(compile(b, vars));
        cr.head = compile(r.head, vars);
        for (const auto& b : r.body_naf) cr.naf.push_back(compile(b, vars));
        cr.nvars = int(vars.size());
        rules.push_back(std::move(cr));
    }

    // literal ids by (pred, neg), and the round in which each appeared
    std::map<std::pair<int, bool>, std::vector<int>> by_pred;
    std::vector<int> round_of;
    auto add_lit = [&](const GLit& l, int round) {
        int before = int(g.lits.size());
        int id = g.intern(l);
        if (id == before) {
            by_pred[{l.pred, l.neg}].push_back(id);
            round_of.push_back(round);
            return true;
        }
        if (round_of[id] < 0) {  // seen before only under NAF
            by_pred[{l.pred, l.neg}].push_back(id);
            round_of[id] = round;
            return true;
        }
        return false;
    };

    std::set<GroundRule> seen;
    for (const auto& f : p.facts) {
        std::map<std::string, int> none;
        Pattern pat = compile(f, none);
        GLit l{pat.pred, pat.neg, {}};
        for (const auto& a : pat.args) l.args.push_back(a.value);
        add_lit(l, 0);
        GroundRule gr{g.intern(l), {}, {}};
        if (seen.insert(gr).second) g.rules.push_back(gr);
    }

    auto instantiate = [](const Pattern& pat, const std::vector<int>& bind) {
        GLit l{pat.pred, pat.neg, {}};
        for (const auto& a : pat.args) l.args.push_back(a.var ? bind[a.value] : a.value);
        return l;
    };

    for (int round = 1;; ++round) {
        bool grew = false;
        for (const auto& cr : rules) {
            std::size_t n = cr.pos.size();
            // semi-naive: position `delta` takes a literal from the previous round,
            // earlier positions strictly older ones, later positions any older one
            for (std::size_t delta = 0; delta < n; ++delta) {
                std::vector<int> bind(cr.nvars, -1);
                std::vector<int> body(n, -1);
                std::function<void(std::size_t)> join = [&](std::size_t i) {
                    if (i == n) {
                        GroundRule gr;
                        gr.head = -1;
                        gr.pos = body;
                        GLit h = instantiate(cr.head, bind);
                        if (add_lit(h, round)) grew = true;
                        gr.head = g.find(h);
                        for (const auto& nf : cr.naf) {
                            GLit l = instantiate(nf, bind);
                            int before = int(g.lits.size());
                            int id = g.intern(l);
                            if (id == before) round_of.push_back(-1);  // NAF-only so far
                            gr.naf.push_back(id);
                        }
                        if (seen.insert(gr).second) g.rules.push_back(gr);
                        return;
                    }
                    const Pattern& pat = cr.pos[i];
                    auto it = by_pred.find({pat.pred, pat.neg});
                    if (it == by_pred.end()) return;
                    const std::vector<int>& cands = it->second;
                    std::size_t limit = cands.size();
                    for (std::size_t c = 0; c < limit; ++c) {
                        int id = cands[c];
                        int r = round_of[id];
                        if (r < 0) continue;
                        if (i == delta && r != round - 1) continue;
                        if (i < delta && r >= round - 1) continue;
                        if (i > delta && r >= round) continue;
                        const GLit& l = g.lits[id];
                        std::vector<int> saved = bind;
                        bool ok = true;
                        for (std::size_t k = 0; k < pat.args.size() && ok; ++k) {
                            const auto& a = pat.args[k];
                            if (!a.var) ok = a.value == l.args[k];
                            else if (bind[a.value] < 0) bind[a.value] = l.args[k];
                            else ok = bind[a.value] == l.args[k];
                        }
                        if (ok) {
                            body[i] = id;
                            join(i + 1);
                        }
                        bind = std::move(saved);
                    }
                };
                join(0);
            }
        }
        if (!grew) break;
    }
    return g;
}

// ---------------------------------------------------------------------------
// least models

namespace {

struct Engine {
    const GroundProgram& g;
    std::vector<std::vector<int>> watch;  // literal -> rules with it in the positive body
    std::vector<int> comp;

    explicit Engine(const GroundProgram& gp) : g(gp), watch(gp.lits.size()), comp(gp.lits.size()) {
        for (std::size_t r = 0; r < g.rules.size(); ++r)
            for (int b : g.rules[r].pos) watch[b].push_back(int(r));
        for (std::size_t i = 0; i < g.lits.size(); ++i) comp[i] = g.complement(int(i));
    }

    // Least model of the reduct in which rules blocked by `assumed` are
    // dropped; returns truth vector and consistency.
    std::pair<std::vector<char>, bool> run(const std::vector<char>& assumed) const {
        std::vector<char> truth(g.lits.size(), 0);
        std::vector<int> missing(g.rules.size());
        std::vector<int> queue;
        auto fire = [&](const GroundRule& r) {
            if (!truth[r.head]) {
                truth[r.head] = 1;
                queue.push_back(r.head);
            }
        };
        std::vector<char> active(g.rules.size(), 1);
        for (std::size_t r = 0; r < g.rules.size(); ++r) {
            const auto& rule = g.rules[r];
            for (int n : rule.naf)
                if (assumed[n]) active[r] = 0;
            missing[r] = int(rule.pos.size());
            if (active[r] && missing[r] == 0) fire(rule);
        }
        while (!queue.empty()) {
            int l = queue.back();
            queue.pop_back();
            for (int r : watch[l]) {
                if (--missing[r] == 0 && active[r]) fire(g.rules[r]);
            }
        }
        bool consistent = true;
        for (std::size_t i = 0; i < truth.size() && consistent; ++i)
            if (truth[i] && comp[i] >= 0 && truth[comp[i]]) consistent = false;
        return {std::move(truth), consistent};
    }
};

std::vector<int> sorted_true(const GroundProgram& g, const std::vector<char>& truth) {
    std::vector<int> out;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i]) out.push_back(int(i));
    std::sort(out.begin(), out.end(), [&](int a, int b) { return g.canonical_less(a, b); });
    return out;
}

bool is_ovr(const GroundProgram& g, int lit) { return g.preds[g.lits[lit].pred] == "ovr" && !g.lits[lit].neg; }

AnswerSet make_answer_set(const GroundProgram& g, const std::vector<char>& truth) {
    AnswerSet a;
    a.literals = sorted_true(g, truth);
    for (int l : a.literals)
        if (is_ovr(g, l)) a.ovr.push_back(l);
    a.chi = chi_of(g, a.ovr);
    return a;
}

}  // namespace

std::optional<LiteralSet> least_model(const GroundProgram& positive) {
    for (const auto& r : positive.rules)
        if (!r.naf.empty()) throw UnsupportedProgram("least_model requires a program without default negation");
    Engine e(positive);
    auto [truth, ok] = e.run(std::vector<char>(positive.lits.size(), 0));
    if (!ok) return std::nullopt;
    LiteralSet s;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i]) s.insert(int(i));
    return s;
}

GroundProgram reduct(const GroundProgram& p, const LiteralSet& s) {
    GroundProgram r = p;
    r.rules.clear();
    for (const auto& rule : p.rules) {
        bool blocked = std::any_of(rule.naf.begin(), rule.naf.end(), [&](int n) { return s.count(n) > 0; });
        if (blocked) continue;
        r.rules.push_back({rule.head, rule.pos, {}});
    }
    return r;
}

std::vector<int> ovr_candidates(const GroundProgram& g) {
    std::set<int> heads;
    for (const auto& r : g.rules)
        if (is_ovr(g, r.head)) heads.insert(r.head);
    std::vector<int> out(heads.begin(), heads.end());
    std::sort(out.begin(), out.end(), [&](int a, int b) { return g.canonical_less(a, b); });
    return out;
}

Chi chi_of(const GroundProgram& g, const std::vector<int>& ovr_atoms) {
    Chi chi;
    for (int id : ovr_atoms) {
        const GLit& l = g.lits[id];
        if (l.args.empty()) continue;
        std::vector<std::string> a;
        for (int x : l.args) a.push_back(g.universe[x]);
        std::string tag = a[0];
        std::vector<std::string> inst, symbols;
        if (tag == "subClass" && a.size() == 4) {
            inst = {a[1]};
            symbols = {a[2], a[3]};
        } else if ((tag == "subRole" || tag == "inv") && a.size() == 5) {
            inst = {a[1], a[2]};
            symbols = {a[3], a[4]};
        } else if (tag == "irr" && a.size() == 3) {
            inst = {a[1]};
            symbols = {a[2]};
        } else {
            continue;
        }
        std::string id_str = tag + "(" + (symbols.empty() ? "" : symbols[0]) + ")";
        for (const auto& o : g.overrides)
            if (o.tag == tag && o.symbols == symbols) {
                id_str = o.axiom_id;
                break;
            }
        chi.insert({id_str, inst});
    }
    return chi;
}

std::vector<AnswerSet> answer_sets(const GroundProgram& g, const SolveOptions& opt) {
    std::vector<AnswerSet> out;
    if (opt.naive) {
        if (g.lits.size() > 20) throw UnsupportedProgram("naive enumeration is limited to 20 ground atoms");
        Engine e(g);
        std::size_t n = g.lits.size();
        std::vector<std::pair<std::vector<char>, AnswerSet>> found;
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            std::vector<char> s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1;
            auto [truth, ok] = e.run(s);
            if (ok && truth == s) found.push_back({s, make_answer_set(g, truth)});
        }
        auto cand = ovr_candidates(g);
        std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
            for (int c : cand)
                if (a.first[c] != b.first[c]) return a.first[c] < b.first[c];
            return a.first < b.first;
        });
        for (auto& f : found) {
            if (opt.limit && out.size() >= *opt.limit) break;
            out.push_back(std::move(f.second));
        }
        return out;
    }

    for (const auto& r : g.rules)
        for (int n : r.naf)
            if (!is_ovr(g, n)) throw UnsupportedProgram("default negation on a non-ovr atom: " + g.to_string(n));

    Engine e(g);
    std::vector<int> cand = ovr_candidates(g);
    std::size_t k = cand.size();
    // 0 undecided, 1 in, 2 out
    std::vector<int> state(k, 0);

    std::function<bool()> search = [&]() -> bool {
        std::vector<int> saved = state;
        for (;;) {
            std::vector<char> hi(g.lits.size(), 0), lo(g.lits.size(), 0);
            for (std::size_t i = 0; i < k; ++i) {
                if (state[i] == 1) hi[cand[i]] = lo[cand[i]] = 1;
                if (state[i] == 0) lo[cand[i]] = 1;
            }
            auto [m_lo, lo_ok] = e.run(lo);  // most rules blocked: smallest model
            auto [m_hi, hi_ok] = e.run(hi);  // fewest rules blocked: largest model
            (void)hi_ok;
            if (!lo_ok) {
                state = saved;
                return true;
            }
            bool changed = false, dead = false;
            for (std::size_t i = 0; i < k && !dead; ++i) {
                int c = cand[i];
                if (state[i] == 1 && !m_hi[c]) dead = true;
                else if (state[i] == 2 && m_lo[c]) dead = true;
                else if (state[i] == 0 && m_lo[c]) {
                    state[i] = 1;
                    changed = true;
                } else if (state[i] == 0 && !m_hi[c]) {
                    state[i] = 2;
                    changed = true;
                }
            }
            if (dead) {
                state = saved;
                return true;
            }
            if (changed) continue;
            auto open = std::find(state.begin(), state.end(), 0);
            if (open == state.end()) {
                // fully decided: both bounds coincide
                bool exact = true;
                for (std::size_t i = 0; i < k; ++i)
                    if ((state[i] == 1) != bool(m_lo[cand[i]])) exact = false;
                if (exact && m_lo == m_hi) out.push_back(make_answer_set(g, m_lo));
                state = saved;
                return !(opt.limit && out.size() >= *opt.limit);
            }
            break;
        }
        std::size_t i = std::size_t(std::find(state.begin(), state.end(), 0) - state.begin());
        std::vector<int> here = state;
        state[i] = 2;
        bool go = search();
        state = here;
        if (go) {
            state[i] = 1;
            go = search();
        }
        state = saved;
        return go;
    };
    search();
    return out;
}

std::vector<AnswerSet> answer_sets(const DProgram& p, const SolveOptions& opt) { return answer_sets(ground(p), opt); }

std::vector<AnswerSet> answer_sets_exhaustive(const GroundProgram& g) {
    Engine e(g);
    auto cand = ovr_candidates(g);
    if (cand.size() > 20) throw UnsupportedProgram("too many ovr candidates for exhaustive search");
    std::vector<AnswerSet> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << cand.size()); ++mask) {
        std::vector<char> o(g.lits.size(), 0);
        for (std::size_t i = 0; i < cand.size(); ++i)
            if ((mask >> (cand.size() - 1 - i)) & 1) o[cand[i]] = 1;
        auto [truth, ok] = e.run(o);
        if (!ok) continue;
        bool match = true;
        for (int c : cand)
            if (bool(truth[c]) != bool(o[c])) match = false;
        if (match) out.push_back(make_answer_set(g, truth));
    }
    return out;
}

}  // namespace dkb
