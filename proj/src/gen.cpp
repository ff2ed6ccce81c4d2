#include "dkb/gen.hpp"

#include <random>
#include <set>

#include "dkb/dkbtext.hpp"
#include "dkb/dlprog.hpp"
#include "dkb/normalize.hpp"
#include "dkb/oracle.hpp"
#include "dkb/reason.hpp"
#include "dkb/safety.hpp"

namespace dkb {

namespace {

class Gen {
public:
    Gen(std::uint64_t seed, const GenOptions& o) : rng_(seed), o_(o) {}

    DKB run() {
        DKB k;
        for (int i = 0; i < o_.concepts; ++i) k.vocab.declare(std::string(1, char('A' + i)), NameKind::Concept);
        for (int i = 0; i < o_.roles; ++i) k.vocab.declare(std::string(1, char('R' + i)), NameKind::Role);
        for (int i = 0; i < o_.individuals; ++i) k.vocab.declare(std::string(1, char('a' + i)), NameKind::Individual);

        int n = pick(1, o_.max_axioms);
        for (int i = 0; i < n; ++i) {
            Axiom a = axiom();
            if (chance(o_.defeasible_ratio)) {
                k.defeasible.push_back({a, k.fresh_defeasible_id()});
            } else {
                k.strict.push_back(a);
            }
        }
        int m = pick(1, o_.max_assertions);
        for (int i = 0; i < m; ++i) {
            Assertion a = assertion();
            if (o_.raw_shapes && chance(0.1)) k.def_abox.push_back({a, k.fresh_defeasible_id()});
            else k.abox.push_back(a);
        }
        return k;
    }

private:
    std::mt19937_64 rng_;
    GenOptions o_;

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

    std::string cname() { return std::string(1, char('A' + pick(0, o_.concepts - 1))); }
    std::string rname() { return std::string(1, char('R' + pick(0, o_.roles - 1))); }
    std::string iname() { return std::string(1, char('a' + pick(0, o_.individuals - 1))); }
    RoleExpr rexpr() { return {rname(), o_.raw_shapes && chance(0.3)}; }

    LeftConcept left() {
        if (chance(0.3)) {
            RoleExpr r = rexpr();
            return LeftConcept::exists(r.name, r.inverted);
        }
        return LeftConcept::atomic(cname());
    }

    Axiom axiom() {
        int w = pick(0, 99);
        if (w < 62) {
            LeftConcept l = left();
            int s = pick(0, 99);
            if (s < 50) return Axiom::concept_incl(l, RightConcept::atomic(cname()));
            if (s < 72) {
                RoleExpr r = rexpr();
                return Axiom::concept_incl(l, RightConcept::exists(r.name, r.inverted));
            }
            if (s < 96 || !o_.raw_shapes) {
                LeftConcept c = o_.raw_shapes ? left() : LeftConcept::atomic(cname());
                return Axiom::concept_incl(l, RightConcept::negation(c));
            }
            return Axiom::concept_incl(l, RightConcept::bottom());
        }
        if (w < 78) return Axiom::role_incl(rexpr(), rexpr());
        if (w < 86) return Axiom::dis(rexpr(), rexpr());
        if (w < 93) return Axiom::inv(rname(), rname());
        return Axiom::irr(rname());
    }

    Assertion assertion() {
        int w = pick(0, 99);
        if (w < 60) return Assertion::concept_of(cname(), iname());
        if (w < 85) return Assertion::role(rname(), iname(), iname());
        if (w < 95) return Assertion::concept_of(cname(), iname(), false);
        return Assertion::role(rname(), iname(), iname(), false);
    }
};

std::string render_chis(const std::set<Chi>& s, const DKB& k) {
    std::string out = "{";
    bool f1 = true;
    for (const auto& chi : s) {
        out += f1 ? "" : ", ";
        f1 = false;
        out += "{";
        bool f2 = true;
        for (const auto& c : chi) {
            out += (f2 ? "" : "; ") + pretty(c, k);
            f2 = false;
        }
        out += "}";
    }
    return out + "}";
}

}  // namespace

DKB random_dkb(std::uint64_t seed, const GenOptions& opt) { return Gen(seed, opt).run(); }

DiffOutcome differential_check(const DKB& k, bool skip_incoherent) {
    DKB n = normalize(k).dkb;
    SafetyReport safety = classify(n);
    if (!safety.exception_safe) return {DiffOutcome::Kind::Skipped, "not exception-safe"};
    if (skip_incoherent && !unsatisfiable_names(n).empty()) return {DiffOutcome::Kind::Skipped, "incoherent TBox"};

    Solved s = solve(k);
    std::set<Chi> pipeline;
    for (const auto& m : s.models) pipeline.insert(m.chi);

    OracleOptions opt;
    int depth = default_depth(n);
    opt.depth = depth;
    std::vector<Chi> oracle_v;
    try {
        oracle_v = oracle_justified_chis(n, opt);
    } catch (const BudgetExceeded& e) {
        return {DiffOutcome::Kind::Skipped, e.what()};
    }
    std::set<Chi> oracle(oracle_v.begin(), oracle_v.end());
    if (pipeline != oracle)
        return {DiffOutcome::Kind::Mismatch,
                "justified chi sets differ: pipeline " + render_chis(pipeline, n) + " vs oracle " + render_chis(oracle, n)};

    const auto& ind = n.vocab.individuals();
    std::vector<Assertion> atoms;
    for (const auto& c : n.vocab.concepts())
        for (const auto& a : ind) atoms.push_back(Assertion::concept_of(c, a));
    for (const auto& r : n.vocab.roles())
        for (const auto& a : ind)
            for (const auto& b : ind) atoms.push_back(Assertion::role(r, a, b));
    for (const auto& q : atoms) {
        bool p = entails(s, q, Mode::Cautious).verdict;
        bool o = oracle_entails(n, oracle_v, q, depth);
        if (p != o)
            return {DiffOutcome::Kind::Mismatch, "cautious " + pretty(q) + ": pipeline " + (p ? "true" : "false") +
                                                     ", oracle " + (o ? "true" : "false")};
    }
    return {};
}

DKB minimize(const DKB& k, const std::function<bool(const DKB&)>& still_bad) {
    DKB cur = k;
    bool progress = true;
    auto attempt = [&](auto& list) {
        for (std::size_t i = 0; i < list.size();) {
            DKB trial = cur;
            auto& tl = [&]() -> auto& {
                if constexpr (std::is_same_v<std::decay_t<decltype(list)>, std::vector<Axiom>>) return trial.strict;
                else if constexpr (std::is_same_v<std::decay_t<decltype(list)>, std::vector<DefeasibleAxiom>>)
                    return trial.defeasible;
                else if constexpr (std::is_same_v<std::decay_t<decltype(list)>, std::vector<Assertion>>)
                    return trial.abox;
                else return trial.def_abox;
            }();
            tl.erase(tl.begin() + long(i));
            bool bad = false;
            try {
                bad = still_bad(trial);
            } catch (const Error&) {
                bad = false;
            }
            if (bad) {
                cur = trial;
                progress = true;
            } else {
                ++i;
            }
        }
    };
    while (progress) {
        progress = false;
        attempt(cur.strict);
        attempt(cur.defeasible);
        attempt(cur.abox);
        attempt(cur.def_abox);
    }
    return cur;
}

}  // namespace dkb
