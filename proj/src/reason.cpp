#include "dkb/reason.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "dkb/dlprog.hpp"
#include "dkb/oracle.hpp"
#include "lexer.hpp"

namespace dkb {

namespace {

void check_input(const DKB& k) {
    ValidationReport v = validate_dkb(k);
    if (!v.ok()) throw UnsupportedInput("invalid knowledge base: " + v.errors.front().message);
    if (!k.una) throw UnsupportedInput("reasoning requires the unique name assumption (@no-una given)");
}

DLiteral clash_output(const ClashLiteral& raw) {
    ClashLiteral l = raw.direct();
    DLiteral d;
    d.strong_neg = !l.positive;
    if (l.is_role) {
        d.atom = {"tripled", {DTerm::constant(l.a), DTerm::constant(l.role.name), DTerm::constant(l.b)}};
    } else {
        std::string c = l.cls.kind == LeftConcept::Kind::Atomic ? l.cls.name : exists_concept_name(l.cls.role());
        d.atom = {"instd", {DTerm::constant(l.a), DTerm::constant(c)}};
    }
    return d;
}

}  // namespace

Solved solve(const DKB& k, const SolveOptions& opt) {
    check_input(k);
    Solved s;
    s.norm = normalize(k);
    s.safety = classify(s.norm.dkb);
    if (!s.safety.exception_safe) throw UnsafeKB(s.safety);
    DProgram p = assemble_program(s.norm.dkb);
    s.ground = ground(p);
    s.models = answer_sets(s.ground, opt);
    if (s.models.empty()) s.strict_satisfiable = is_satisfiable(k);
    return s;
}

bool is_satisfiable(const DKB& k) {
    check_input(k);
    // The strict part has no defeasible axioms, so it is always exception-safe
    // and the program has at most one answer set.
    DKB strict = normalize(k.strict_part()).dkb;
    SolveOptions opt;
    opt.limit = 1;
    return !answer_sets(ground(assemble_program(strict)), opt).empty();
}

EntailmentResult entails(const Solved& s, const Assertion& q, Mode mode) {
    DLiteral target = output_atom(s.norm.dkb, q);
    int id = s.ground.find(target);
    EntailmentResult r;
    r.mode = mode;
    r.models = s.models.size();
    r.strict_unsat = s.models.empty() && !s.strict_satisfiable;
    if (s.models.empty()) {
        r.verdict = mode == Mode::Cautious;
        return r;
    }
    auto contains = [&](const AnswerSet& a) {
        return id >= 0 && std::find(a.literals.begin(), a.literals.end(), id) != a.literals.end();
    };
    if (mode == Mode::Cautious) {
        r.verdict = true;
        for (const auto& a : s.models)
            if (!contains(a)) {
                r.verdict = false;
                r.witnesses.push_back(a.chi);
                break;
            }
    } else {
        for (const auto& a : s.models)
            if (contains(a)) {
                r.verdict = true;
                r.witnesses.push_back(a.chi);
                break;
            }
    }
    return r;
}

EntailmentResult entails(const DKB& k, const Assertion& q, Mode mode) { return entails(solve(k), q, mode); }

std::vector<JustifiedChi> justified_assumptions(const Solved& s) {
    std::vector<JustifiedChi> out;
    const DKB& n = s.norm.dkb;
    for (const auto& a : s.models) {
        std::set<int> lits(a.literals.begin(), a.literals.end());
        auto in_model = [&](const ClashLiteral& l) {
            int id = s.ground.find(clash_output(l));
            return id >= 0 && lits.count(id) > 0;
        };
        JustifiedChi j;
        j.chi = a.chi;
        for (const auto& c : a.chi) {
            std::optional<ClashingSet> via;
            std::vector<ClashingSet> sets;
            if (const auto* d = n.find_defeasible(c.axiom_id)) sets = minimal_clashing_sets(d->ax, c.args);
            for (const auto& cs : sets)
                if (std::all_of(cs.elements.begin(), cs.elements.end(), in_model)) {
                    via = cs;
                    break;
                }
            j.via.push_back({c, via});
        }
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<JustifiedChi> justified_assumptions(const DKB& k) { return justified_assumptions(solve(k)); }

// ---------------------------------------------------------------------------
// conjunctive queries

ConjunctiveQuery parse_query(std::string_view text, const Vocabulary* vocab) {
    using detail::Cursor;
    try {
        Cursor c(detail::tokenize(text));
        ConjunctiveQuery q;
        c.expect("?");
        c.expect("(");
        if (!c.is_sym(")")) {
            for (;;) {
                std::string v = c.ident("answer variable");
                if (vocab && vocab->has(v, NameKind::Individual))
                    throw detail::ParseFailure("answer variable '" + v + "' is a declared individual", c.peek().span);
                if (std::find(q.answer_vars.begin(), q.answer_vars.end(), v) != q.answer_vars.end())
                    throw detail::ParseFailure("duplicate answer variable '" + v + "'", c.peek().span);
                q.answer_vars.push_back(v);
                if (!c.accept(",")) break;
            }
        }
        c.expect(")");
        c.expect(":-");
        for (;;) {
            QAtom a;
            a.pred = c.ident("predicate");
            c.expect("(");
            for (;;) {
                std::string t = c.ident("term");
                bool is_const = vocab && vocab->has(t, NameKind::Individual) &&
                                std::find(q.answer_vars.begin(), q.answer_vars.end(), t) == q.answer_vars.end();
                a.args.push_back({!is_const, t});
                if (!c.accept(",")) break;
            }
            c.expect(")");
            if (a.args.size() > 2) c.fail("atoms take one or two terms");
            for (const auto& t : a.args)
                if (t.var && std::find(q.answer_vars.begin(), q.answer_vars.end(), t.name) == q.answer_vars.end() &&
                    std::find(q.exist_vars.begin(), q.exist_vars.end(), t.name) == q.exist_vars.end())
                    q.exist_vars.push_back(t.name);
            q.atoms.push_back(std::move(a));
            if (!c.accept(",")) break;
        }
        c.accept(".");
        if (!c.at_end()) c.fail("trailing input");
        for (const auto& v : q.answer_vars) {
            bool used = false;
            for (const auto& a : q.atoms)
                for (const auto& t : a.args) used |= t.var && t.name == v;
            if (!used) throw detail::ParseFailure("answer variable '" + v + "' does not occur in the body", {1, 1, 1});
        }
        return q;
    } catch (const detail::ParseFailure& e) {
        throw Error("query: " + std::to_string(e.span.line) + ":" + std::to_string(e.span.column) + ": " + e.what());
    }
}

std::string to_string(const ConjunctiveQuery& q) {
    std::string s = "?(";
    for (std::size_t i = 0; i < q.answer_vars.size(); ++i) s += (i ? "," : "") + q.answer_vars[i];
    s += ") :- ";
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
        s += (i ? ", " : "") + q.atoms[i].pred + "(";
        for (std::size_t j = 0; j < q.atoms[i].args.size(); ++j) s += (j ? "," : "") + q.atoms[i].args[j].name;
        s += ")";
    }
    return s + ".";
}

namespace {

// All matches of q in the positive part of m, projected on the answer vars.
std::set<std::vector<std::string>> matches(const LeastCASModel& m, const ConjunctiveQuery& q) {
    // index positive facts by predicate
    std::map<std::string, std::vector<std::pair<int, int>>> facts;
    for (const auto& l : m.literals) {
        if (!l.positive) continue;
        if (l.is_role) facts[l.role].push_back({l.a, l.b});
        else if (l.cls.kind == LeftConcept::Kind::Atomic) facts[l.cls.name].push_back({l.a, -1});
    }
    std::set<std::vector<std::string>> out;
    std::map<std::string, int> bind;
    auto resolve = [&](const QTerm& t) -> int {
        if (!t.var) return m.term(t.name);
        auto it = bind.find(t.name);
        return it == bind.end() ? -2 : it->second;
    };
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == q.atoms.size()) {
            std::vector<std::string> tuple;
            for (const auto& v : q.answer_vars) {
                int t = bind.at(v);
                if (m.terms[t].depth != 0) return;  // answers range over named individuals
                tuple.push_back(m.terms[t].name);
            }
            out.insert(tuple);
            return;
        }
        const QAtom& a = q.atoms[i];
        auto it = facts.find(a.pred);
        if (it == facts.end()) return;
        for (const auto& [x, y] : it->second) {
            std::vector<std::string> fresh;
            bool ok = true;
            int vals[2] = {x, y};
            for (std::size_t k = 0; k < a.args.size() && ok; ++k) {
                int want = resolve(a.args[k]);
                if (want == -2) {
                    bind[a.args[k].name] = vals[k];
                    fresh.push_back(a.args[k].name);
                } else {
                    ok = want == vals[k];
                }
            }
            if (ok) go(i + 1);
            for (const auto& v : fresh) bind.erase(v);
        }
    };
    go(0);
    return out;
}

}  // namespace

QueryResult certain_answers(const Solved& s, const ConjunctiveQuery& q, std::optional<int> skolem_depth) {
    const DKB& n = s.norm.dkb;
    for (const auto& a : q.atoms) {
        bool ok = a.args.size() == 1 ? n.vocab.has(a.pred, NameKind::Concept) : n.vocab.has(a.pred, NameKind::Role);
        if (!ok) throw Error("query uses undeclared " + std::string(a.args.size() == 1 ? "concept" : "role") + " '" + a.pred + "'");
        for (const auto& t : a.args)
            if (!t.var && !n.vocab.has(t.name, NameKind::Individual)) throw Error("undeclared individual '" + t.name + "'");
    }
    QueryResult r;
    int existentials = 0;
    for (const auto& ax : n.strict)
        if (ax.kind == Axiom::Kind::ConceptIncl && ax.rhs.kind == RightConcept::Kind::Exists) ++existentials;
    r.depth = skolem_depth ? *skolem_depth : int(q.atoms.size()) + existentials;
    const ChainBound& cb = s.safety.chain_bound;
    if (cb.unbounded || cb.n > r.depth)
        r.warnings.push_back("chain bound " + to_string(cb) + " exceeds Skolem depth " + std::to_string(r.depth) +
                             "; answers may be incomplete");

    if (s.models.empty()) {
        // no DKB-model: every tuple is vacuously certain
        r.strict_unsat = !s.strict_satisfiable;
        std::vector<std::string> tuple;
        const auto& ind = n.vocab.individuals();
        std::function<void(std::size_t)> all = [&](std::size_t i) {
            if (i == q.answer_vars.size()) {
                r.answers.insert(tuple);
                return;
            }
            for (const auto& a : ind) {
                tuple.push_back(a);
                all(i + 1);
                tuple.pop_back();
            }
        };
        all(0);
        return r;
    }
    bool first = true;
    for (const auto& model : s.models) {
        auto found = matches(least_cas_model(n, model.chi, r.depth), q);
        if (first) {
            r.answers = std::move(found);
            first = false;
        } else {
            std::set<std::vector<std::string>> keep;
            std::set_intersection(r.answers.begin(), r.answers.end(), found.begin(), found.end(),
                                  std::inserter(keep, keep.end()));
            r.answers = std::move(keep);
        }
        if (r.answers.empty()) break;
    }
    return r;
}

QueryResult certain_answers(const DKB& k, const ConjunctiveQuery& q, std::optional<int> skolem_depth) {
    return certain_answers(solve(k), q, skolem_depth);
}

}  // namespace dkb
