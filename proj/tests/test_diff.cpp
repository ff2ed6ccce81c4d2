#include "doctest.h"
#include "dkb/normalize.hpp"
#include "dkb/oracle.hpp"
#include "support.hpp"

using namespace dkb;

// The datalog rules never derive a negative literal for a name that is
// unsatisfiable on its own (A [= B, A [= not B), so exceptions justified
// only through such a name are invisible to the pipeline.  These cases
// pin that gap down: every disagreement is incoherent, and coherent inputs
// agree.
TEST_SUITE("differential") {

TEST_CASE("every disagreement comes from an incoherent TBox") {
    int mismatches = 0, agree = 0;
    for (int seed = 1; seed <= 400; ++seed) {
        DKB k = random_dkb(std::uint64_t(seed));
        auto r = differential_check(k);
        if (r.kind == DiffOutcome::Kind::Agree) ++agree;
        if (r.kind != DiffOutcome::Kind::Mismatch) continue;
        ++mismatches;
        INFO("seed ", seed, ": ", r.detail);
        CHECK_FALSE(unsatisfiable_names(normalize(k).dkb).empty());
    }
    MESSAGE("mismatches ", mismatches, ", agreements ", agree);
    CHECK(agree > 150);
}

TEST_CASE("coherent inputs agree") {
    int compared = 0;
    for (int seed = 1; seed <= 400; ++seed) {
        auto r = differential_check(random_dkb(std::uint64_t(seed)), true);
        INFO("seed ", seed, ": ", r.detail);
        CHECK(r.kind != DiffOutcome::Kind::Mismatch);
        if (r.kind == DiffOutcome::Kind::Agree) ++compared;
    }
    CHECK(compared > 100);
}

TEST_CASE("known incoherent disagreement") {
    // a name that is empty in every model, used as the only route to a clash
    DKB k = parse_dkb("A [= C.\nA [= not C.\nD: B [= A.\nB(a).\n");
    CHECK_FALSE(unsatisfiable_names(normalize(k).dkb).empty());
    CHECK(differential_check(k).kind == DiffOutcome::Kind::Mismatch);
    CHECK(differential_check(k, true).kind == DiffOutcome::Kind::Skipped);
}

TEST_CASE("minimizer keeps the failure and shrinks") {
    DKB k = parse_dkb("A [= C.\nA [= not C.\nD: B [= A.\nB(a).\nE [= F.\nF(b).\nR(a,b).\n");
    auto bad = [](const DKB& x) { return differential_check(x).kind == DiffOutcome::Kind::Mismatch; };
    REQUIRE(bad(k));
    DKB m = minimize(k, bad);
    CHECK(bad(m));
    CHECK(m.size() < k.size());
}

TEST_CASE("generator is deterministic") {
    for (int s = 1; s <= 50; ++s) CHECK(random_dkb(std::uint64_t(s)) == random_dkb(std::uint64_t(s)));
    CHECK_FALSE(random_dkb(1) == random_dkb(2));
}

}  // TEST_SUITE
