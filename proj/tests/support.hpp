#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dkb/dkbtext.hpp"
#include "dkb/gen.hpp"
#include "dkb/kb.hpp"

#ifndef DKB_DATA_DIR
#error "DKB_DATA_DIR must point at the data/ directory"
#endif

namespace dkbtest {

inline std::string data_path(const std::string& name) { return std::string(DKB_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline dkb::DKB load(const std::string& name) { return dkb::parse_dkb(slurp(data_path(name))); }

inline const std::vector<std::string>& corpus_files() {
    static const std::vector<std::string> f{"dept.dkb", "example5.dkb", "nixon.dkb", "inconsistent.dkb"};
    return f;
}

// The fixed files plus `n` generated DKBs (seeds 1..n).
inline std::vector<dkb::DKB> corpus(int n) {
    std::vector<dkb::DKB> out;
    for (const auto& f : corpus_files()) out.push_back(load(f));
    for (int s = 1; s <= n; ++s) out.push_back(dkb::random_dkb(std::uint64_t(s)));
    return out;
}

inline dkb::ClashingAssumption ca(const dkb::DKB& k, const dkb::Axiom& a, std::vector<std::string> args) {
    for (const auto& d : k.defeasible)
        if (d.ax == a) return {d.id, std::move(args)};
    return {"<missing>", std::move(args)};
}

}  // namespace dkbtest
