#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "dkb/kb.hpp"

namespace dkb {

// Random small DKBs for differential testing.  Shapes include the raw
// (non-normal) forms so that the normalizer is exercised too.
struct GenOptions {
    int concepts = 3;
    int roles = 2;
    int individuals = 3;
    int max_axioms = 6;
    int max_assertions = 4;
    double defeasible_ratio = 0.4;
    bool raw_shapes = true;
};

DKB random_dkb(std::uint64_t seed, const GenOptions& opt = {});

struct DiffOutcome {
    enum class Kind { Agree, Mismatch, Skipped };
    Kind kind = Kind::Agree;
    std::string detail;  // what disagreed, or why skipped
};

// Oracle vs pipeline on one DKB: justified chi sets and cautious entailment
// of every positive ground atom over the named individuals.  Non
// exception-safe inputs are skipped, and so are incoherent ones (see
// unsatisfiable_names) when `skip_incoherent` is set.
DiffOutcome differential_check(const DKB& k, bool skip_incoherent = false);

// Greedily drops statements while `still_bad` keeps holding.
DKB minimize(const DKB& k, const std::function<bool(const DKB&)>& still_bad);

}  // namespace dkb
