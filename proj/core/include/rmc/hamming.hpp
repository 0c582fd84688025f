#pragma once

#include "rmc/code.hpp"

namespace rmc {

// Scaling-class representatives of the nonzero vectors of a q-system: one
// point per F_q^x-orbit, each the lexicographically smallest coordinate tuple
// of its orbit, listed in sorted order.
struct ProjectiveSystem {
    FieldPtr field;  // extension field the points live over
    std::size_t k = 0;
    std::vector<std::vector<u64>> points;
    std::vector<u64> multiplicities;  // all 1 in this construction
};
ProjectiveSystem projective_system(const QSystem& X, u64 budget = kDefaultBudget);

// Hamming-metric code whose generator columns are the points of the
// projective system of a rank-metric code's q-system.
struct HammingCode {
    Mat g;  // k x (q^n - 1)/(q - 1) over the extension field
    std::size_t k() const { return g.rows; }
    std::size_t length() const { return g.cols; }
};
HammingCode hamming_expansion(const RankCode& C, u64 budget = kDefaultBudget);

WeightDistribution hamming_weight_distribution(const HammingCode& H,
                                               u64 budget = kDefaultBudget,
                                               unsigned threads = 1);

// Per-codeword correspondence between rank weight t in the source code and
// Hamming weight (q^n - q^{n-t})/(q - 1) in its expansion; true only when it
// holds for every scalar class.
bool verify_weight_correspondence(const RankCode& C, u64 budget = kDefaultBudget);

struct HammingTwoWeightReport {
    bool two_weight = false;
    bool antipodal = false;  // second weight equals the length
    std::size_t w1 = 0, w2 = 0;
    WeightDistribution dist;
};
HammingTwoWeightReport analyze_hamming_two_weight(const HammingCode& H,
                                                  u64 budget = kDefaultBudget);
// Same, with the source rank-metric code known: additionally asserts that the
// Hamming counts are the exact image of the source rank counts.
HammingTwoWeightReport analyze_hamming_two_weight(const HammingCode& H, const RankCode& source,
                                                  u64 budget = kDefaultBudget);

}  // namespace rmc
