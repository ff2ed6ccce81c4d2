#include <algorithm>

#include "doctest.h"
#include "dkb/normalize.hpp"
#include "dkb/oracle.hpp"
#include "dkb/safety.hpp"
#include "support.hpp"

using namespace dkb;

namespace {

DKB dept() { return normalize(dkbtest::load("dept.dkb")).dkb; }

ClashingAssumption dept_alpha(const std::string& who) {
    DKB k = dept();
    return {k.defeasible.at(0).id, {who}};
}

// Literal of the chase corresponding to a ground first-order literal;
// "?" arguments stand for an existential concept.
std::optional<OLit> as_olit(const GroundLit& g, const LeastCASModel& m, const DKB& k) {
    OLit o;
    o.positive = g.positive;
    if (k.vocab.has(g.pred, NameKind::Concept) && g.args.size() == 1) {
        o.cls = LeftConcept::atomic(g.pred);
        o.a = m.term(g.args[0]);
        return o.a < 0 ? std::nullopt : std::optional<OLit>(o);
    }
    if (g.args.size() != 2) return std::nullopt;
    bool v0 = g.args[0][0] == '?', v1 = g.args[1][0] == '?';
    if (v0 || v1) {
        o.cls = LeftConcept::exists(g.pred, v0);
        o.a = m.term(v0 ? g.args[1] : g.args[0]);
        return o.a < 0 ? std::nullopt : std::optional<OLit>(o);
    }
    o.is_role = true;
    o.role = g.pred;
    o.a = m.term(g.args[0]);
    o.b = m.term(g.args[1]);
    if (o.a < 0 || o.b < 0) return std::nullopt;
    return o;
}

std::string replay_error(const DKB& k, const LeastCASModel& m) {
    for (const auto& d : m.derivations) {
        const OLit& l = m.literals[std::size_t(d.lit)];
        for (int p : d.premises)
            if (p < 0 || p >= d.lit) return "premise out of order";
        std::vector<std::string> names;
        for (int a : d.args) names.push_back(m.terms[std::size_t(a)].name);
        if (d.kind == "abox" || d.kind == "defeasible-abox") {
            const Assertion& a = d.kind == "abox" ? k.abox.at(std::size_t(d.axiom)) : k.def_abox.at(std::size_t(d.axiom)).as;
            if (!m.holds(a)) return "asserted fact missing";
            continue;
        }
        if (d.kind == "exists-intro") {
            if (d.premises.size() != 1) return "exists-intro without premise";
            const OLit& r = m.literals[std::size_t(d.premises[0])];
            bool ok = r.is_role && !l.is_role && l.cls.kind == LeftConcept::Kind::Exists && l.cls.name == r.role &&
                      l.a == (l.cls.inverted ? r.b : r.a);
            if (!ok) return "bad exists-intro";
            continue;
        }
        if (d.kind == "added") continue;
        if (d.kind == "cutoff") {
            if (l.is_role || l.cls.kind != LeftConcept::Kind::Exists) return "cutoff on a non-exists literal";
            if (m.terms[std::size_t(l.a)].depth != m.depth) return "cutoff below the depth bound";
            continue;
        }
        const Axiom* ax = nullptr;
        std::string id;
        if (d.kind == "strict") {
            ax = &k.strict.at(std::size_t(d.axiom));
        } else if (d.kind == "defeasible") {
            ax = &k.defeasible.at(std::size_t(d.axiom)).ax;
            id = k.defeasible.at(std::size_t(d.axiom)).id;
        } else {
            return "unknown derivation kind " + d.kind;
        }
        if (!id.empty()) {
            bool all_named = std::all_of(d.args.begin(), d.args.end(), [&](int a) { return m.terms[std::size_t(a)].depth == 0; });
            if (all_named && m.chi.count({id, names})) return "excepted instance applied";
        }
        bool matched = false;
        for (const auto& c : instantiate_axiom(*ax, names)) {
            auto head = as_olit(c.head, m, k);
            if (!head || !(*head == l)) continue;
            if (c.body) {
                auto body = as_olit(*c.body, m, k);
                if (!body || d.premises.size() != 1 || !(*body == m.literals[std::size_t(d.premises[0])])) continue;
            }
            matched = true;
        }
        if (!matched) return "no clause of " + pretty(*ax) + " yields " + m.render(l);
    }
    return "";
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("candidate assumptions") {
    CHECK(candidate_assumptions(dept()).size() == 2);
    DKB r = normalize(parse_dkb("D: R [= S.\nR(a,b).\n")).dkb;
    CHECK(candidate_assumptions(r).size() == 4);
    CHECK(candidate_assumptions(normalize(dkbtest::load("inconsistent.dkb")).dkb).empty());
}

TEST_CASE("least model of the department KB") {
    DKB k = dept();
    LeastCASModel m = least_cas_model(k, {dept_alpha("bob")}, 1);
    CHECK(m.consistent());
    int f = m.term("f_hasCourse(alice)");
    REQUIRE(f >= 0);
    OLit has;
    has.is_role = true;
    has.role = "hasCourse";
    has.a = m.term("alice");
    has.b = f;
    CHECK(m.holds(has));
    CHECK(m.holds(Assertion::concept_of("_ex_hasCourse", "bob", false)));
    CHECK(m.holds(Assertion::concept_of("_ex_hasCourse", "alice")));

    LeastCASModel bad = least_cas_model(k, {}, 1);
    CHECK_FALSE(bad.consistent());
    REQUIRE(bad.clash);

    LeastCASModel empty = least_cas_model(DKB{}, {}, 2);
    CHECK(empty.consistent());
    CHECK(empty.literals.empty());
}

TEST_CASE("justification examples") {
    DKB k = dept();
    auto ok = is_justified(k, {dept_alpha("bob")}, 1);
    CHECK(ok.justified);
    REQUIRE(ok.evidence.size() == 1);
    REQUIRE(ok.evidence[0].via);
    CHECK(pretty(*ok.evidence[0].via) == "{DeptMember(bob), ¬∃hasCourse(bob)}");

    auto both = is_justified(k, {dept_alpha("alice"), dept_alpha("bob")}, 1);
    CHECK_FALSE(both.justified);
    for (const auto& e : both.evidence)
        if (e.assumption.args[0] == "alice") CHECK_FALSE(e.via);

    CHECK(is_justified(parse_dkb("D: A [= B.\nA(a).\n"), {}, 0).justified);
    CHECK_THROWS_AS(is_justified(k, {}, 1), Error);
}

TEST_CASE("justified chis of the fixed files") {
    auto d = oracle_justified_chis(dept());
    REQUIRE(d.size() == 1);
    CHECK(d[0] == Chi{dept_alpha("bob")});

    auto n = oracle_justified_chis(normalize(dkbtest::load("nixon.dkb")).dkb);
    REQUIRE(n.size() == 2);
    CHECK(n[0].size() == 1);
    CHECK(n[1].size() == 1);

    CHECK(oracle_justified_chis(normalize(dkbtest::load("inconsistent.dkb")).dkb).empty());
}

TEST_CASE("budget") {
    std::string text = "@roles R, S, T.\n@individuals a, b, c, d, e.\nD: R [= S.\nD: S [= T.\n";
    for (const char* x : {"a", "b", "c", "d", "e"})
        for (const char* y : {"a", "b", "c", "d", "e"}) text += std::string("R(") + x + "," + y + ").\nnot T(" + x + "," + y + ").\n";
    DKB k = normalize(parse_dkb(text)).dkb;
    OracleOptions opt;
    opt.budget = 3;
    CHECK_THROWS_AS(oracle_justified_chis(k, opt), BudgetExceeded);
}

TEST_CASE("derivations replay") {
    int models = 0;
    for (const auto& k0 : dkbtest::corpus(200)) {
        DKB k = normalize(k0).dkb;
        for (const auto& c : candidate_assumptions(k)) {
            for (int depth : {0, 1, 2}) {
                LeastCASModel m = least_cas_model(k, {c}, depth);
                ++models;
                INFO(serialize_dkb(k), pretty(c, k), " depth ", depth);
                CHECK(replay_error(k, m) == "");
            }
        }
        LeastCASModel m = least_cas_model(k, {}, 2);
        CHECK(replay_error(k, m) == "");
    }
    CHECK(models > 100);
}

TEST_CASE("chase grows with depth") {
    for (const auto& k0 : dkbtest::corpus(200)) {
        DKB k = normalize(k0).dkb;
        LeastCASModel prev = least_cas_model(k, {}, 0);
        for (int d = 1; d <= 3; ++d) {
            LeastCASModel cur = least_cas_model(k, {}, d);
            auto a = prev.rendered(), b = cur.rendered();
            std::vector<std::string> pa, pb;
            for (const auto& s : a)
                if (s.rfind("¬", 0) != 0) pa.push_back(s);
            for (const auto& s : b)
                if (s.rfind("¬", 0) != 0) pb.push_back(s);
            INFO(serialize_dkb(k), " depth ", d);
            CHECK(std::includes(pb.begin(), pb.end(), pa.begin(), pa.end()));
            if (!prev.consistent()) CHECK_FALSE(cur.consistent());
            prev = std::move(cur);
        }
    }
}

TEST_CASE("justified chis form an antichain") {
    for (const auto& k0 : dkbtest::corpus(200)) {
        DKB k = normalize(k0).dkb;
        if (!classify(k).exception_safe) continue;
        std::vector<Chi> cs;
        try {
            cs = oracle_justified_chis(k);
        } catch (const BudgetExceeded&) {
            continue;
        }
        for (const auto& a : cs)
            for (const auto& b : cs)
                if (a != b) CHECK_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        CHECK(std::is_sorted(cs.begin(), cs.end()));
    }
}

TEST_CASE("satisfiability and entailment helpers") {
    CHECK(oracle_satisfiable(dkbtest::load("dept.dkb")));
    CHECK_FALSE(oracle_satisfiable(dkbtest::load("inconsistent.dkb")));
    CHECK(oracle_satisfiable(parse_dkb("D: A [= B.\nD: A [= not B.\nA(a).\n")));
    DKB k = dept();
    CHECK(oracle_entails(k, Assertion::concept_of("_ex_hasCourse", "alice")));
    CHECK_FALSE(oracle_entails(k, Assertion::concept_of("_ex_hasCourse", "bob")));
    CHECK(oracle_entails(k, Assertion::concept_of("_ex_hasCourse", "bob", false)));
    // defeasible axioms count as strict here, so PhDStudent has no instance
    auto d = unsatisfiable_names(k);
    CHECK(std::find(d.begin(), d.end(), "PhDStudent") != d.end());
    CHECK(unsatisfiable_names(parse_dkb("A [= B.\nA(a).\n")).empty());
    auto u = unsatisfiable_names(normalize(dkbtest::load("example5.dkb")).dkb);
    CHECK(std::find(u.begin(), u.end(), "_nf_bot") != u.end());
}

}  // TEST_SUITE
