#include <algorithm>

#include "doctest.h"
#include "dkb/normalize.hpp"
#include "dkb/oracle.hpp"
#include "dkb/safety.hpp"
#include "support.hpp"

using namespace dkb;

namespace {

bool contains(const std::vector<Axiom>& v, const Axiom& a) { return std::find(v.begin(), v.end(), a) != v.end(); }

bool contains_def(const std::vector<DefeasibleAxiom>& v, const Axiom& a) {
    return std::any_of(v.begin(), v.end(), [&](const DefeasibleAxiom& d) { return d.ax == a; });
}

Axiom incl_not(const std::string& a, const std::string& b) {
    return Axiom::concept_incl(LeftConcept::atomic(a), RightConcept::negation(LeftConcept::atomic(b)));
}

// Every ground concept/role assertion over the original names, both signs.
std::vector<Assertion> ground_atoms(const DKB& k) {
    std::vector<Assertion> out;
    const auto& ind = k.vocab.individuals();
    for (const auto& c : k.vocab.concepts())
        for (const auto& a : ind)
            for (bool pos : {true, false}) out.push_back(Assertion::concept_of(c, a, pos));
    for (const auto& r : k.vocab.roles())
        for (const auto& a : ind)
            for (const auto& b : ind)
                for (bool pos : {true, false}) out.push_back(Assertion::role(r, a, b, pos));
    return out;
}

}  // namespace

TEST_SUITE("normalize") {

TEST_CASE("defeasible negative inclusion") {
    auto n = normalize(parse_dkb("D: A [= not B."));
    const DKB& k = n.dkb;
    REQUIRE(k.defeasible.size() == 1);
    CHECK(k.defeasible[0].ax == Axiom::subclass("A", "_nf_d1_B"));
    REQUIRE(k.strict.size() == 1);
    CHECK(k.strict[0] == incl_not("B", "_nf_d1_B"));
    CHECK(n.trace.introduced_symbols.at("_nf_d1_B") == "D: A [= not B");
    CHECK(is_normal_form(k));
}

TEST_CASE("already normal input only gains bridges") {
    DKB full = normalize(dkbtest::load("dept.dkb")).dkb;
    DKB stripped = full;
    // drop one bridge direction; the other keeps the role existential
    auto bridge = [](const Axiom& a) { return a.lhs.kind == LeftConcept::Kind::Exists; };
    stripped.strict.erase(std::remove_if(stripped.strict.begin(), stripped.strict.end(), bridge), stripped.strict.end());
    CHECK(stripped.strict.size() + 1 == full.strict.size());
    DKB again = normalize(stripped).dkb;
    CHECK(again.defeasible == full.defeasible);
    CHECK(again.abox == full.abox);
    for (const auto& a : full.strict) CHECK(contains(again.strict, a));
    CHECK(again.strict.size() == full.strict.size());
}

TEST_CASE("Employee example rewrite") {
    DKB k = normalize(dkbtest::load("example5.dkb")).dkb;
    CHECK(contains(k.strict, Axiom::inv("hasSupervisor", "_nf_hasSupervisor_inv")));
    CHECK(contains_def(k.defeasible, Axiom::subclass("_ex__nf_hasSupervisor_inv", "_nf_bot")));
    CHECK(contains(k.strict, Axiom::subclass("_nf_bot", "_nf_f")));
    CHECK(contains(k.strict, incl_not("_nf_bot", "_nf_f")));
    CHECK(contains(k.strict, Axiom::concept_incl(LeftConcept::exists("_nf_hasSupervisor_inv"),
                                                 RightConcept::atomic("_ex__nf_hasSupervisor_inv"))));
    CHECK(contains(k.strict, Axiom::concept_incl(LeftConcept::atomic("_ex__nf_hasSupervisor_inv"),
                                                 RightConcept::exists("_nf_hasSupervisor_inv"))));
    CHECK(is_normal_form(k));
}

TEST_CASE("assertion rewrites") {
    DKB k = normalize(parse_dkb("not A(a).\nnot R(a,b).\nD: B(b).\nD: S(a,b).\nD: not C(a).\n")).dkb;
    CHECK(is_normal_form(k));
    for (const auto& a : k.abox) CHECK(a.positive);
    CHECK(k.def_abox.empty());
    // D(B(b)) and D(S(a,b)) each leave one defeasible inclusion, D(not C(a)) another
    CHECK(k.defeasible.size() == 3);
}

TEST_CASE("normal form recognizer") {
    CHECK(is_normal_form(normalize(dkbtest::load("dept.dkb")).dkb));
    CHECK_FALSE(is_normal_form(dkbtest::load("dept.dkb")));
    CHECK(is_normal_form(DKB{}));
    CHECK_FALSE(is_normal_form(parse_dkb("A [= exists R.")));
}

TEST_CASE("fresh symbols use reserved prefixes and the trace covers them") {
    for (const auto& k : dkbtest::corpus(100)) {
        auto n = normalize(k);
        for (const auto& [sym, src] : n.trace.introduced_symbols) {
            CHECK(Vocabulary::is_reserved(sym));
            CHECK_FALSE(src.empty());
        }
    }
}

TEST_CASE("idempotence, size bound and determinism") {
    for (const auto& k : dkbtest::corpus(300)) {
        DKB n = normalize(k).dkb;
        INFO(serialize_dkb(k));
        CHECK(normalize(n).dkb == n);
        CHECK(n.size() <= 6 * std::max<std::size_t>(k.size(), 1));
        CHECK(serialize_dkb(normalize(k).dkb) == serialize_dkb(n));
        CHECK(is_normal_form(n));
    }
}

TEST_CASE("safety verdict is preserved") {
    for (const auto& k : dkbtest::corpus(300)) {
        DKB n = normalize(k).dkb;
        INFO(serialize_dkb(k));
        CHECK(classify(k).exception_safe == classify(n).exception_safe);
    }
}

TEST_CASE("oracle entailments over the original names are preserved") {
    int compared = 0;
    for (const auto& k : dkbtest::corpus(150)) {
        DKB n = normalize(k).dkb;
        if (!classify(n).exception_safe) continue;
        OracleOptions opt;
        opt.depth = default_depth(n);
        std::vector<Chi> raw, norm;
        try {
            raw = oracle_justified_chis(k, opt);
            norm = oracle_justified_chis(n, opt);
        } catch (const BudgetExceeded&) {
            continue;
        }
        ++compared;
        CHECK(raw.size() == norm.size());
        for (const auto& q : ground_atoms(k)) {
            INFO(serialize_dkb(k), pretty(q));
            CHECK(oracle_entails(k, raw, q, *opt.depth) == oracle_entails(n, norm, q, *opt.depth));
        }
    }
    CHECK(compared > 50);
}

}  // TEST_SUITE
