#pragma once

#include <string>

#include "rmc/code.hpp"

namespace rmc {

// Enumeration of [n, k] codes over F_{q^m}/F_q by their q-systems: every
// n-dim subspace of F_q^{mk} whose folded generator has full row rank over
// the extension field is examined once (exhaustive mode), or sampled
// uniformly with a fixed seed.
struct SearchJob {
    u64 q = 2;
    unsigned m = 1;
    unsigned n = 1;
    unsigned k = 2;
    bool exhaustive = true;
    u64 sample_count = 0;  // used when !exhaustive
    u64 seed = 0;
    bool atw_only = false;
    bool two_weight_only = false;
    u64 budget = kDefaultBudget;
    unsigned threads = 1;
};

struct Finding {
    u64 index = 0;  // subspace index in enumeration order
    std::vector<std::size_t> support;
    bool atw = false;
    std::size_t d = 0;
};

struct SearchSummary {
    u64 examined = 0;      // systems visited (spanning or not)
    u64 non_spanning = 0;  // folded generator rank < k over the extension field
    std::map<std::string, u64> by_support;  // census of all spanning systems
    std::vector<Finding> findings;          // after filters, deterministic order
};

SearchSummary search_codes(const SearchJob& job);

}  // namespace rmc
