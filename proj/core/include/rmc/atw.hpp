#pragma once

#include "rmc/code.hpp"

namespace rmc {

// Antipodal two-weight analysis: support {d, n} with d < n and at least one
// full-rank codeword.  For antipodal k = 2 codes the predicted counts
// (1, (q^m-1)(q^n-1)/(q^{n-d}-1), remainder) are filled in and checked
// against the measured distribution.
struct AtwReport {
    bool two_weight = false;
    bool antipodal = false;
    std::size_t d = 0;   // smallest nonzero weight
    std::size_t d2 = 0;  // second nonzero weight (= n when antipodal), 0 if none
    WeightDistribution dist;
    std::map<std::size_t, u64> predicted;  // empty unless antipodal with k = 2
};
AtwReport analyze_atw(const RankCode& C, u64 budget = kDefaultBudget, unsigned threads = 1);

// [2d, 2, d] antipodal two-weight code over F_{q^m}/F_q with generator
// [[0...0, b_1...b_d],[b_1...b_d, 0...0]], b_i an embedded F_q-basis of
// F_{q^d}.  Requires d | m and d < m (at d = m there is no full-rank word).
RankCode two_block_atw(u64 q, unsigned d, unsigned m);

// [kd, k, d] two-weight (not antipodal) code over F_{q^{2d}}/F_q with
// block-diagonal rows (b_1...b_d); requires k > 2.
RankCode block_diagonal_two_weight(u64 q, unsigned d, unsigned k);

// Normal form anchored at a full-rank codeword: g = [[c1, c2],[A, 0]] with
// rank(c1|c2) = n, the zero block r columns wide, and A generating a
// non-degenerate constant-weight code.  g = row_transform * G * column_transform.
struct NormalForm {
    Mat g;
    std::size_t r = 0;
    Mat row_transform;     // k x k over the extension field
    Mat column_transform;  // n x n over the base subfield
};
NormalForm atw_normal_form(const RankCode& C, u64 budget = kDefaultBudget);

// Column expansion of an [l, 2, l-1] MRD code over F_{q^m}/F_{q^t} into an
// [lt, 2, (l-1)t] antipodal two-weight code over F_{q^m}/F_q: each column G_i
// becomes the block {a_j G_i} for the monomial F_q-basis {a_j} of F_{q^t}.
RankCode expand_mrd_to_atw(const RankCode& C_mrd, const FieldPtr& base_field,
                           u64 budget = kDefaultBudget);

// True iff the q-system is closed under multiplication by the embedded
// subfield F_{q^{n-d}} (checked on the basis and a multiplicative generator).
// Requires an antipodal two-weight input with (n-d) | m.
bool is_induced_by_mrd(const RankCode& C, u64 budget = kDefaultBudget);

// Classification of [2d, 2] codes: either not antipodal two-weight, or
// equivalent to the canonical generator [[0...0, 1, a_2...a_d],
// [1, a_2...a_d, 0...0]] whose entries span the embedded subfield F_{q^d}.
enum class HalfKind { NotATW, Canonical };
struct HalfClassification {
    HalfKind kind = HalfKind::NotATW;
    Mat canonical;                    // filled when kind == Canonical
    std::vector<u64> subfield_basis;  // (1, a_2, ..., a_d) as reprs in sup
};
HalfClassification classify_half_distance(const RankCode& C, u64 budget = kDefaultBudget);

}  // namespace rmc
