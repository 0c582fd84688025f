#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rmc/gf.hpp"

namespace rmc {

// Dense matrix over a single field; entries are element reprs, row-major.
struct Mat {
    FieldPtr field;
    std::size_t rows = 0, cols = 0;
    std::vector<u64> a;

    Mat() = default;
    Mat(FieldPtr f, std::size_t r, std::size_t c)
        : field(std::move(f)), rows(r), cols(c), a(r * c, 0) {}

    static Mat identity(FieldPtr f, std::size_t n);
    static Mat from_rows(FieldPtr f, const std::vector<std::vector<u64>>& rows);

    u64& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    u64 at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    std::vector<u64> row(std::size_t i) const;
    Mat transpose() const;

    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }
};

struct RrefResult {
    Mat m;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan reduced row echelon form with deterministic pivoting (first
// nonzero entry in column order).
RrefResult rref(const Mat& M);

std::size_t mat_rank(const Mat& M);
Mat mat_mul(const Mat& A, const Mat& B);
// Row vector times matrix (the codeword map x -> xG).
std::vector<u64> vec_mat(const std::vector<u64>& x, const Mat& A);
// Matrix times column vector.
std::vector<u64> mat_vec(const Mat& A, const std::vector<u64>& v);
// Inverse of a square invertible matrix; throws std::invalid_argument if singular.
Mat mat_inverse(const Mat& M);

// An F-subspace of F^ambient in canonical form: the basis is stored in RREF,
// so structural equality is subspace equality.
class Subspace {
public:
    static Subspace zero(FieldPtr f, std::size_t ambient);
    static Subspace full(FieldPtr f, std::size_t ambient);
    static Subspace from_vectors(FieldPtr f, std::size_t ambient,
                                 const std::vector<std::vector<u64>>& gens);
    static Subspace from_rref(Mat rref_basis);  // caller guarantees RREF rows

    std::size_t dim() const { return basis_.rows; }
    std::size_t ambient() const { return ambient_; }
    const FieldPtr& field() const { return field_; }
    const Mat& basis() const { return basis_; }

    bool contains(const std::vector<u64>& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    // Flattened (dim, basis entries) key for ordering/dedup.
    std::vector<u64> key() const;

private:
    Subspace(FieldPtr f, std::size_t ambient, Mat basis)
        : field_(std::move(f)), ambient_(ambient), basis_(std::move(basis)) {}
    FieldPtr field_;
    std::size_t ambient_ = 0;
    Mat basis_;
};

Subspace sum(const Subspace& A, const Subspace& B);
// Zassenhaus block elimination.
Subspace intersect(const Subspace& A, const Subspace& B);
// Right kernel {v : Mv = 0}.
Subspace kernel(const Mat& M);
Subspace row_space(const Mat& M);

// First solution of A x = b (free variables zero); nullopt when inconsistent.
std::optional<std::vector<u64>> solve_linear(const Mat& A, const std::vector<u64>& b);

// Invertible square transform whose first ambient-dim(S) columns are the
// greedy unit-vector completion of S and whose last dim(S) columns are the
// RREF basis of S.
Mat complement_transform(const Subspace& S);

// Columns j = coordinates of v_j over the subfield; ratio x n matrix over
// e.sub().  The optional basis (of sup over sub) defaults to the monomial
// basis; rank of the result equals the rank of v over the subfield.
Mat expand_over_subfield(const std::vector<u64>& v, const Embedding& e);
Mat expand_over_subfield(const std::vector<u64>& v, const Embedding& e,
                         const std::vector<u64>& basis);
std::size_t rank_over_subfield(const std::vector<u64>& v, const Embedding& e);

// [N choose k]_q; throws std::overflow_error past 2^63.
u64 gaussian_binomial(u64 q, unsigned N, unsigned k);

// Canonical enumeration of all k-dimensional subspaces of F^N: pivot-column
// patterns in lexicographic order, then free entries in lexicographic order
// (row-major position order, earlier position most significant).  Supports
// O(index-size) unranking for data-parallel consumption.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(FieldPtr f, unsigned N, unsigned k);

    u64 count() const { return total_; }
    Subspace at(u64 index) const;

private:
    FieldPtr field_;
    unsigned N_, k_;
    u64 total_;
    std::vector<std::vector<unsigned>> patterns_;  // pivot columns, lex order
    std::vector<u64> block_size_;                  // q^{free count} per pattern
    std::vector<u64> offset_;                      // cumulative start index
};

}  // namespace rmc
