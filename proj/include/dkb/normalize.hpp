#pragma once

#include <map>
#include <string>
#include <vector>

#include "dkb/kb.hpp"

namespace dkb {

struct NormalizationTrace {
    struct Step {
        std::string source;
        std::vector<std::string> produced;
    };
    std::map<std::string, std::string> introduced_symbols;  // fresh symbol -> originating statement
    std::vector<Step> rewrite_steps;
};

struct Normalized {
    DKB dkb;
    NormalizationTrace trace;
};

Normalized normalize(const DKB& k);

bool is_normal_axiom(const Axiom& a, bool defeasible);
bool is_normal_form(const DKB& k);

}  // namespace dkb
