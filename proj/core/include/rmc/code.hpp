#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rmc/errors.hpp"
#include "rmc/linalg.hpp"

namespace rmc {

inline constexpr u64 kDefaultBudget = 10'000'000;

namespace detail {
// Index-range reduction into weight-count maps; the merge order is fixed by
// chunk index, so results are independent of the thread count.
std::map<std::size_t, u64> parallel_weight_counts(
    u64 total, unsigned threads,
    const std::function<void(u64, u64, std::map<std::size_t, u64>&)>& work);
}  // namespace detail

// (p, e) with q = p^e; throws std::invalid_argument if q is not a prime power.
std::pair<u64, unsigned> prime_power_decompose(u64 q);
// Canonical field whose order is the (prime power) q.
FieldPtr canonical_field_of_order(u64 q);

struct WeightDistribution {
    enum class Metric { Rank, Hamming };
    Metric metric = Metric::Rank;
    std::size_t n = 0;
    std::map<std::size_t, u64> counts;

    u64 total() const;
    std::size_t min_distance() const;          // throws std::logic_error if all-zero
    std::vector<std::size_t> support() const;  // sorted distinct nonzero weights
    bool operator==(const WeightDistribution& o) const {
        return metric == o.metric && n == o.n && counts == o.counts;
    }
};

// --- projective (scalar-class) representatives of F^k \ {0} ---
// One representative per class: first nonzero coordinate equals 1.  Canonical
// order: increasing big-endian integer key (coordinate 0 most significant), so
// (0,...,0,1) comes first and (1, q-1, ..., q-1) last.
u64 projective_rep_count(u64 order, std::size_t k);  // (order^k - 1)/(order - 1)
std::vector<u64> projective_rep_at(const FieldPtr& f, std::size_t k, u64 index);

// --- rank metric codes ---

class QSystem;

class RankCode {
public:
    // G over base.sup(), full row rank over the big field.
    static RankCode from_generator(Mat G, Embedding base);

    const Mat& generator() const { return G_; }
    const Embedding& base() const { return base_; }
    const FieldPtr& sup() const { return base_.sup(); }
    const FieldPtr& sub() const { return base_.sub(); }
    std::size_t k() const { return G_.rows; }
    std::size_t n() const { return G_.cols; }
    unsigned m() const { return base_.ratio(); }  // [sup : sub]
    u64 q() const { return sub()->order(); }

    std::vector<u64> codeword(const std::vector<u64>& x) const { return vec_mat(x, G_); }
    std::size_t rank_weight(const std::vector<u64>& word) const {
        return rank_over_subfield(word, base_);
    }

    QSystem q_system() const;
    bool is_nondegenerate() const;
    // (non-degenerate code of length dim(q-system), M over the base subfield
    // with C*M having only zero columns past that length).
    std::pair<RankCode, Mat> compress_degenerate() const;

private:
    RankCode(Mat G, Embedding base) : G_(std::move(G)), base_(std::move(base)) {}
    Mat G_;
    Embedding base_;
};

// The base-subfield span of the generator columns, kept both as the raw
// column list in sup^k and as a canonical subspace of the expanded ambient
// space sub^{mk}.
class QSystem {
public:
    QSystem(const RankCode& C);

    const std::vector<std::vector<u64>>& columns() const { return columns_; }
    const Subspace& expanded() const { return expanded_; }
    std::size_t dim() const { return expanded_.dim(); }
    std::size_t ambient_dim() const { return expanded_.ambient(); }
    const Embedding& base() const { return base_; }
    std::size_t k() const { return k_; }

    // sup^k vector -> concatenated subfield coordinates in sub^{mk}.
    std::vector<u64> expand_vector(const std::vector<u64>& v) const;
    bool contains(const std::vector<u64>& v) const { return expanded_.contains(expand_vector(v)); }

private:
    Embedding base_;
    std::size_t k_;
    std::vector<std::vector<u64>> columns_;
    Subspace expanded_;
};

// The m x n matrix over the base subfield of the map lambda -> x.(sum_l
// lambda_l g_l) (columns = subfield coordinates of x.g_l).  Its kernel is the
// hyperplane intersection X n H_x written in generator-column coordinates.
Mat covector_matrix(const RankCode& C, const std::vector<u64>& x);

// Exact rank-weight distribution by scalar-class enumeration (one codeword
// representative per class, counts scaled by |sup|-1).
WeightDistribution rank_weight_distribution(const RankCode& C, u64 budget = kDefaultBudget,
                                            unsigned threads = 1);
// Independent route for k = 2: scan the q^m + 1 hyperplanes of sup^2 and use
// the dimension of their intersection with the q-system.
WeightDistribution hyperplane_weight_distribution(const RankCode& C, u64 budget = kDefaultBudget);

std::size_t min_distance(const RankCode& C, u64 budget = kDefaultBudget);
bool is_mrd(const RankCode& C, u64 budget = kDefaultBudget);

// Evaluation-vector construction with rows g_j^{Q^i} (Q = |base.sub()|);
// default g = (1, beta, beta^2, ...) with beta the canonical generator of sup.
RankCode gabidulin(const Embedding& base, unsigned l, unsigned k,
                   std::optional<std::vector<u64>> g = std::nullopt);

// The [mk, k, m] constant-weight code whose generator columns form a
// base-subfield basis of sup^k.
RankCode hadamard_code(u64 q, unsigned m, unsigned k);

enum class ConstantWeightKind { NotConstant, DimOne, Hadamard };
struct ConstantWeightClass {
    ConstantWeightKind kind = ConstantWeightKind::NotConstant;
    std::size_t d = 0;  // constant weight when kind != NotConstant
};
ConstantWeightClass classify_constant_weight(const RankCode& C, u64 budget = kDefaultBudget);

u64 gl_order(u64 q, unsigned n);  // |GL(n, q)|, checked

// Enumerates GL(n, F) row by row: each row scans vectors in increasing
// big-endian key order, skipping those in the span of the rows above.
class GLEnumerator {
public:
    GLEnumerator(FieldPtr f, unsigned n);
    // Fills the next invertible matrix; false when exhausted.
    bool next(Mat& out);

private:
    FieldPtr field_;
    unsigned n_;
    u64 qn_;
    bool done_ = false;
    std::vector<u64> idx_;  // big-endian vector keys per row; empty until started
};

struct EquivalenceResult {
    enum class Status { Yes, No, Budget };
    Status status = Status::No;
    u64 alpha = 0;  // scalar witness (repr in sup)
    Mat M;          // column transform over the base subfield
};
// Exhaustive witness search: C1 = alpha * C2 * M.  The scan order is M via
// GLEnumerator, alpha by increasing repr; the first witness is returned.
EquivalenceResult codes_equivalent(const RankCode& C1, const RankCode& C2,
                                   u64 budget = kDefaultBudget);

// G over sup times a matrix over the base subfield (entries lifted through
// the embedding).
Mat mul_lifted(const Mat& G, const Mat& M_sub, const Embedding& e);

}  // namespace rmc
