#include <algorithm>

#include "doctest.h"
#include "dkb/oracle.hpp"
#include "dkb/reason.hpp"
#include "support.hpp"

using namespace dkb;

namespace {

using Tuples = std::set<std::vector<std::string>>;

DKB nonmono(bool with_negative) {
    return parse_dkb(std::string("D: A [= B.\nA(c).\n") + (with_negative ? "not B(c).\n" : "@concepts B.\n"));
}

}  // namespace

TEST_SUITE("reason") {

TEST_CASE("satisfiability") {
    CHECK(is_satisfiable(dkbtest::load("dept.dkb")));
    CHECK_FALSE(is_satisfiable(dkbtest::load("inconsistent.dkb")));
    CHECK(is_satisfiable(parse_dkb("D: A [= B.\nD: A [= not B.\nA(a).\n")));
    // safety is not needed here
    CHECK(is_satisfiable(dkbtest::load("example5.dkb")));
}

TEST_CASE("department entailments") {
    DKB k = dkbtest::load("dept.dkb");
    CHECK(entails(k, parse_assertion("exists hasCourse(alice)"), Mode::Cautious).verdict);
    CHECK_FALSE(entails(k, parse_assertion("exists hasCourse(bob)"), Mode::Cautious).verdict);
    CHECK(entails(k, parse_assertion("not exists hasCourse(bob)"), Mode::Cautious).verdict);
    CHECK(entails(k, Assertion::concept_of("DeptMember", "bob"), Mode::Cautious).verdict);
    CHECK_THROWS_AS(entails(k, Assertion::concept_of("Nope", "bob"), Mode::Cautious), Error);
}

TEST_CASE("Nixon entailments") {
    DKB k = dkbtest::load("nixon.dkb");
    auto c = entails(k, Assertion::concept_of("Pacifist", "nixon"), Mode::Cautious);
    CHECK_FALSE(c.verdict);
    CHECK(c.models == 2);
    CHECK_FALSE(c.witnesses.empty());
    CHECK(entails(k, Assertion::concept_of("Pacifist", "nixon"), Mode::Brave).verdict);
}

TEST_CASE("unsatisfiable strict part is vacuous") {
    DKB k = dkbtest::load("inconsistent.dkb");
    auto c = entails(k, Assertion::concept_of("B", "a"), Mode::Cautious);
    CHECK(c.verdict);
    CHECK(c.strict_unsat);
    CHECK_FALSE(entails(k, Assertion::concept_of("B", "a"), Mode::Brave).verdict);
}

TEST_CASE("unsafe and no-UNA inputs are refused") {
    DKB e5 = dkbtest::load("example5.dkb");
    CHECK_THROWS_AS(entails(e5, Assertion::concept_of("Employee", "alice"), Mode::Cautious), UnsafeKB);
    CHECK_THROWS_AS(justified_assumptions(e5), UnsafeKB);
    CHECK_THROWS_AS(certain_answers(e5, parse_query("?(x) :- Employee(x).")), UnsafeKB);
    DKB nu = parse_dkb("@no-una.\nA(a).\n");
    CHECK_THROWS_AS(solve(nu), UnsupportedInput);
}

TEST_CASE("justified assumptions") {
    DKB k = dkbtest::load("dept.dkb");
    auto j = justified_assumptions(k);
    REQUIRE(j.size() == 1);
    REQUIRE(j[0].chi.size() == 1);
    const auto& a = *j[0].chi.begin();
    CHECK(a.args == std::vector<std::string>{"bob"});
    CHECK(pretty(a, k).find("DeptMember ⊑ ∃hasCourse") != std::string::npos);
    REQUIRE(j[0].via.size() == 1);
    REQUIRE(j[0].via[0].second);

    auto plain = justified_assumptions(parse_dkb("A [= B.\nA(a).\n"));
    REQUIRE(plain.size() == 1);
    CHECK(plain[0].chi.empty());

    auto n = justified_assumptions(dkbtest::load("nixon.dkb"));
    REQUIRE(n.size() == 2);
    CHECK(n[0].chi.size() == 1);
    CHECK(n[1].chi.size() == 1);
    CHECK_FALSE(std::includes(n[0].chi.begin(), n[0].chi.end(), n[1].chi.begin(), n[1].chi.end()));
}

TEST_CASE("non-monotonicity regression") {
    auto with = justified_assumptions(nonmono(true));
    REQUIRE(with.size() == 1);
    REQUIRE(with[0].chi.size() == 1);
    CHECK(with[0].chi.begin()->args == std::vector<std::string>{"c"});
    CHECK_FALSE(entails(nonmono(true), Assertion::concept_of("B", "c"), Mode::Cautious).verdict);

    auto without = justified_assumptions(nonmono(false));
    REQUIRE(without.size() == 1);
    CHECK(without[0].chi.empty());
    CHECK(entails(nonmono(false), Assertion::concept_of("B", "c"), Mode::Cautious).verdict);
}

TEST_CASE("query parsing") {
    DKB k = dkbtest::load("dept.dkb");
    auto q = parse_query("?(x) :- DeptMember(x), hasCourse(x,y).", &k.vocab);
    CHECK(q.answer_vars == std::vector<std::string>{"x"});
    CHECK(q.exist_vars == std::vector<std::string>{"y"});
    REQUIRE(q.atoms.size() == 2);
    CHECK(to_string(q) == "?(x) :- DeptMember(x), hasCourse(x,y).");
    auto c = parse_query("?() :- hasCourse(alice,y).", &k.vocab);
    CHECK_FALSE(c.atoms[0].args[0].var);
    CHECK_THROWS_AS(parse_query("?(z) :- A(x).", &k.vocab), Error);
    CHECK_THROWS_AS(parse_query("?(x) A(x).", &k.vocab), Error);
}

TEST_CASE("certain answers") {
    DKB k = dkbtest::load("dept.dkb");
    auto r = certain_answers(k, parse_query("?(x) :- DeptMember(x), hasCourse(x,y).", &k.vocab));
    CHECK(r.answers == Tuples{{"alice"}});
    auto b = certain_answers(k, parse_query("?() :- Professor(x).", &k.vocab));
    CHECK(b.answers == Tuples{{}});
    DKB n = dkbtest::load("nixon.dkb");
    auto p = certain_answers(n, parse_query("?() :- Pacifist(nixon).", &n.vocab));
    CHECK(p.answers.empty());
    // two hops through an unnamed individual
    DKB ch = parse_dkb("A [= exists R.\nexists R^- [= B.\nB [= exists S.\nA(a).\n");
    auto two = certain_answers(ch, parse_query("?(x) :- R(x,y), S(y,z).", &ch.vocab));
    CHECK(two.answers == Tuples{{"a"}});
}

TEST_CASE("single-atom queries agree with cautious entailment") {
    int compared = 0;
    for (int seed = 1; seed <= 150; ++seed) {
        DKB k = random_dkb(std::uint64_t(seed));
        Solved s;
        try {
            s = solve(k);
        } catch (const UnsafeKB&) {
            continue;
        }
        ++compared;
        const auto& v = k.vocab;
        std::vector<Assertion> qs;
        for (const auto& c : v.concepts())
            for (const auto& a : v.individuals()) qs.push_back(Assertion::concept_of(c, a));
        for (const auto& r : v.roles())
            for (const auto& a : v.individuals())
                for (const auto& b : v.individuals()) qs.push_back(Assertion::role(r, a, b));
        for (const auto& q : qs) {
            std::string text = "?() :- " + q.pred + "(" + q.a + (q.kind == Assertion::Kind::Role ? "," + q.b : "") + ").";
            bool cq = !certain_answers(s, parse_query(text, &k.vocab)).answers.empty();
            INFO(serialize_dkb(k), text);
            CHECK(cq == entails(s, q, Mode::Cautious).verdict);
        }
    }
    CHECK(compared > 50);
}

TEST_CASE("cautious implies brave when models exist") {
    for (int seed = 1; seed <= 150; ++seed) {
        DKB k = random_dkb(std::uint64_t(seed));
        Solved s;
        try {
            s = solve(k);
        } catch (const UnsafeKB&) {
            continue;
        }
        if (s.models.empty()) continue;
        for (const auto& c : k.vocab.concepts())
            for (const auto& a : k.vocab.individuals()) {
                auto q = Assertion::concept_of(c, a);
                if (entails(s, q, Mode::Cautious).verdict) CHECK(entails(s, q, Mode::Brave).verdict);
            }
    }
}

TEST_CASE("depth warning for long chains") {
    DKB k = dkbtest::load("example5.dkb");
    k.defeasible.clear();
    auto r = certain_answers(k, parse_query("?(x) :- Employee(x).", &k.vocab));
    CHECK(r.answers == Tuples{{"alice"}});
    CHECK_FALSE(r.warnings.empty());
}

}  // TEST_SUITE
