#include "rmc/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rmc {

namespace {

void check_same_field(const FieldPtr& a, const FieldPtr& b, const char* what) {
    if (!a || !b || !a->same(*b)) throw std::invalid_argument(std::string(what) + ": field mismatch");
}

u64 checked_pow(u64 q, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (u64(1) << 62) / q) throw std::overflow_error("power exceeds supported range");
        r *= q;
    }
    return r;
}

}  // namespace

Mat Mat::identity(FieldPtr f, std::size_t n) {
    Mat m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(FieldPtr f, const std::vector<std::vector<u64>>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows: no rows");
    Mat m(std::move(f), rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (rows[i][j] >= m.field->order()) throw std::invalid_argument("entry repr out of range");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

std::vector<u64> Mat::row(std::size_t i) const {
    return std::vector<u64>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
}

Mat Mat::transpose() const {
    Mat t(field, cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool Mat::operator==(const Mat& o) const {
    return field && o.field && field->same(*o.field) && rows == o.rows && cols == o.cols && a == o.a;
}

RrefResult rref(const Mat& M) {
    RrefResult res;
    res.m = M;
    Mat& m = res.m;
    const Field& F = *m.field;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t pr = SIZE_MAX;
        for (std::size_t i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr == SIZE_MAX) continue;
        if (pr != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(pr, j));
        u64 il = F.inv(m.at(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), il);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            u64 f = m.at(i, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

std::size_t mat_rank(const Mat& M) { return rref(M).rank; }

Mat mat_mul(const Mat& A, const Mat& B) {
    check_same_field(A.field, B.field, "mat_mul");
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
    const Field& F = *A.field;
    Mat C(A.field, A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t l = 0; l < A.cols; ++l) {
            u64 v = A.at(i, l);
            if (v == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                if (B.at(l, j) != 0) C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(l, j)));
        }
    return C;
}

std::vector<u64> vec_mat(const std::vector<u64>& x, const Mat& A) {
    if (x.size() != A.rows) throw std::invalid_argument("vec_mat: dimension mismatch");
    const Field& F = *A.field;
    std::vector<u64> r(A.cols, 0);
    for (std::size_t i = 0; i < A.rows; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < A.cols; ++j)
            if (A.at(i, j) != 0) r[j] = F.add(r[j], F.mul(x[i], A.at(i, j)));
    }
    return r;
}

std::vector<u64> mat_vec(const Mat& A, const std::vector<u64>& v) {
    if (v.size() != A.cols) throw std::invalid_argument("mat_vec: dimension mismatch");
    const Field& F = *A.field;
    std::vector<u64> r(A.rows, 0);
    for (std::size_t i = 0; i < A.rows; ++i) {
        u64 acc = 0;
        for (std::size_t j = 0; j < A.cols; ++j)
            if (A.at(i, j) != 0 && v[j] != 0) acc = F.add(acc, F.mul(A.at(i, j), v[j]));
        r[i] = acc;
    }
    return r;
}

Mat mat_inverse(const Mat& M) {
    if (M.rows != M.cols) throw std::invalid_argument("mat_inverse: matrix not square");
    const std::size_t n = M.rows;
    Mat aug(M.field, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, n + i) = 1;
    }
    RrefResult r = rref(aug);
    // pivots must all land in the left block; a pivot at column >= n means
    // the left block ran out of rank and the augmentation supplied it
    if (r.rank != n || r.pivots[n - 1] >= n)
        throw std::invalid_argument("mat_inverse: matrix is singular");
    Mat inv(M.field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.m.at(i, n + j);
    return inv;
}

// ---- Subspace ----

Subspace Subspace::zero(FieldPtr f, std::size_t ambient) {
    Mat b(f, 0, ambient);
    return Subspace(std::move(f), ambient, std::move(b));
}

Subspace Subspace::full(FieldPtr f, std::size_t ambient) {
    Mat b = Mat::identity(f, ambient);
    return Subspace(std::move(f), ambient, std::move(b));
}

Subspace Subspace::from_vectors(FieldPtr f, std::size_t ambient,
                                const std::vector<std::vector<u64>>& gens) {
    if (gens.empty()) return zero(std::move(f), ambient);
    for (const auto& g : gens)
        if (g.size() != ambient) throw std::invalid_argument("generator has wrong length");
    Mat m = Mat::from_rows(f, gens);
    RrefResult r = rref(m);
    Mat basis(f, r.rank, ambient);
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < ambient; ++j) basis.at(i, j) = r.m.at(i, j);
    return Subspace(std::move(f), ambient, std::move(basis));
}

Subspace Subspace::from_rref(Mat rref_basis) {
    FieldPtr f = rref_basis.field;
    std::size_t ambient = rref_basis.cols;
    return Subspace(std::move(f), ambient, std::move(rref_basis));
}

bool Subspace::contains(const std::vector<u64>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector has wrong length");
    const Field& F = *field_;
    std::vector<u64> w = v;
    for (std::size_t i = 0; i < basis_.rows; ++i) {
        // locate this row's pivot
        std::size_t pc = 0;
        while (pc < ambient_ && basis_.at(i, pc) == 0) ++pc;
        if (pc == ambient_) continue;
        u64 c = w[pc];
        if (c == 0) continue;
        for (std::size_t j = pc; j < ambient_; ++j) w[j] = F.sub(w[j], F.mul(c, basis_.at(i, j)));
    }
    return std::all_of(w.begin(), w.end(), [](u64 x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
    for (std::size_t i = 0; i < other.basis_.rows; ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    return field_->same(*o.field_) && ambient_ == o.ambient_ && basis_.rows == o.basis_.rows &&
           basis_.a == o.basis_.a;
}

std::vector<u64> Subspace::key() const {
    std::vector<u64> k;
    k.reserve(1 + basis_.a.size());
    k.push_back(basis_.rows);
    k.insert(k.end(), basis_.a.begin(), basis_.a.end());
    return k;
}

Subspace sum(const Subspace& A, const Subspace& B) {
    if (A.ambient() != B.ambient()) throw std::invalid_argument("ambient mismatch");
    check_same_field(A.field(), B.field(), "sum");
    std::vector<std::vector<u64>> gens;
    for (std::size_t i = 0; i < A.dim(); ++i) gens.push_back(A.basis().row(i));
    for (std::size_t i = 0; i < B.dim(); ++i) gens.push_back(B.basis().row(i));
    return Subspace::from_vectors(A.field(), A.ambient(), gens);
}

Subspace intersect(const Subspace& A, const Subspace& B) {
    if (A.ambient() != B.ambient()) throw std::invalid_argument("ambient mismatch");
    check_same_field(A.field(), B.field(), "intersect");
    const std::size_t N = A.ambient();
    const std::size_t ra = A.dim(), rb = B.dim();
    if (ra == 0 || rb == 0) return Subspace::zero(A.field(), N);
    // Zassenhaus: eliminate [[A|A],[B|0]]; rows with zero left half carry a
    // basis of the intersection in their right half.
    Mat big(A.field(), ra + rb, 2 * N);
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            big.at(i, j) = A.basis().at(i, j);
            big.at(i, N + j) = A.basis().at(i, j);
        }
    for (std::size_t i = 0; i < rb; ++i)
        for (std::size_t j = 0; j < N; ++j) big.at(ra + i, j) = B.basis().at(i, j);
    RrefResult r = rref(big);
    std::vector<std::vector<u64>> gens;
    for (std::size_t i = 0; i < r.rank; ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < N; ++j)
            if (r.m.at(i, j) != 0) {
                left_zero = false;
                break;
            }
        if (left_zero) {
            std::vector<u64> v(N);
            for (std::size_t j = 0; j < N; ++j) v[j] = r.m.at(i, N + j);
            gens.push_back(std::move(v));
        }
    }
    return Subspace::from_vectors(A.field(), N, gens);
}

Subspace kernel(const Mat& M) {
    RrefResult r = rref(M);
    const std::size_t n = M.cols;
    std::vector<char> is_pivot(n, 0);
    for (std::size_t c : r.pivots) is_pivot[c] = 1;
    const Field& F = *M.field;
    std::vector<std::vector<u64>> gens;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        std::vector<u64> v(n, 0);
        v[j] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = F.neg(r.m.at(i, j));
        gens.push_back(std::move(v));
    }
    if (gens.empty()) return Subspace::zero(M.field, n);
    return Subspace::from_vectors(M.field, n, gens);
}

Subspace row_space(const Mat& M) {
    std::vector<std::vector<u64>> rows;
    for (std::size_t i = 0; i < M.rows; ++i) rows.push_back(M.row(i));
    return Subspace::from_vectors(M.field, M.cols, rows);
}

std::optional<std::vector<u64>> solve_linear(const Mat& A, const std::vector<u64>& b) {
    if (b.size() != A.rows) throw std::invalid_argument("right-hand side has wrong length");
    Mat aug(A.field, A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    RrefResult r = rref(aug);
    std::vector<u64> x(A.cols, 0);
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (r.pivots[i] == A.cols) return std::nullopt;
        x[r.pivots[i]] = r.m.at(i, A.cols);
    }
    return x;
}

Mat complement_transform(const Subspace& S) {
    const std::size_t n = S.ambient(), dim = S.dim();
    const FieldPtr& F = S.field();
    std::vector<std::vector<u64>> chosen;
    Subspace span = S;
    for (std::size_t j = 0; j < n && chosen.size() + dim < n; ++j) {
        std::vector<u64> ej(n, 0);
        ej[j] = 1;
        if (!span.contains(ej)) {
            chosen.push_back(ej);
            std::vector<std::vector<u64>> gens = chosen;
            for (std::size_t i = 0; i < dim; ++i) gens.push_back(S.basis().row(i));
            span = Subspace::from_vectors(F, n, gens);
        }
    }
    if (chosen.size() + dim != n) throw std::logic_error("unit-vector completion failed");
    Mat M(F, n, n);
    for (std::size_t j = 0; j < chosen.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) M.at(i, j) = chosen[j][i];
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < n; ++i) M.at(i, chosen.size() + j) = S.basis().at(j, i);
    return M;
}

// ---- subfield expansion ----

Mat expand_over_subfield(const std::vector<u64>& v, const Embedding& e) {
    const unsigned ratio = e.ratio();
    Mat m(e.sub(), ratio, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        std::vector<u64> c = e.coords(v[j]);
        for (unsigned i = 0; i < ratio; ++i) m.at(i, j) = c[i];
    }
    return m;
}

Mat expand_over_subfield(const std::vector<u64>& v, const Embedding& e,
                         const std::vector<u64>& basis) {
    if (basis.size() != e.ratio()) throw std::invalid_argument("basis has wrong size");
    Mat m(e.sub(), basis.size(), v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        std::vector<u64> c = e.coords_in_basis(v[j], basis);
        for (std::size_t i = 0; i < basis.size(); ++i) m.at(i, j) = c[i];
    }
    return m;
}

std::size_t rank_over_subfield(const std::vector<u64>& v, const Embedding& e) {
    Mat m = expand_over_subfield(v, e);
    std::size_t rank = mat_rank(m);
#ifndef NDEBUG
    // rank-nullity cross-check on the dot-product map restricted to sub^n
    assert(rank + kernel(m).dim() == v.size());
#endif
    return rank;
}

// ---- Gaussian binomials and subspace enumeration ----

u64 gaussian_binomial(u64 q, unsigned N, unsigned k) {
    if (k > N) return 0;
    if (k == 0 || k == N) return 1;
    using u128 = unsigned __int128;
    u64 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        u64 num = checked_pow(q, N - k + 1 + i) - 1;
        u64 den = checked_pow(q, i + 1) - 1;
        u128 prod = (u128)r * num;
        if (prod % den != 0) throw std::logic_error("gaussian binomial partial product not integral");
        prod /= den;
        if (prod > (u128)(u64(1) << 62)) throw std::overflow_error("gaussian binomial exceeds supported range");
        r = (u64)prod;
    }
    return r;
}

SubspaceEnumerator::SubspaceEnumerator(FieldPtr f, unsigned N, unsigned k)
    : field_(std::move(f)), N_(N), k_(k) {
    if (k > N) throw std::invalid_argument("subspace dimension exceeds ambient");
    const u64 q = field_->order();
    // pivot patterns in lexicographic order
    std::vector<unsigned> comb(k);
    for (unsigned i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        patterns_.push_back(comb);
        if (k == 0) break;
        int i = (int)k - 1;
        while (i >= 0 && comb[i] == N - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (unsigned j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    offset_.resize(patterns_.size());
    block_size_.resize(patterns_.size());
    u64 total = 0;
    for (std::size_t t = 0; t < patterns_.size(); ++t) {
        const auto& pat = patterns_[t];
        std::vector<char> is_pivot(N, 0);
        for (unsigned c : pat) is_pivot[c] = 1;
        unsigned free_cnt = 0;
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = pat[i] + 1; j < N; ++j)
                if (!is_pivot[j]) ++free_cnt;
        u64 block = checked_pow(q, free_cnt);
        offset_[t] = total;
        if (total > (u64(1) << 62) - block) throw std::overflow_error("subspace count exceeds supported range");
        total += block;
        block_size_[t] = block;
    }
    total_ = total;
}

Subspace SubspaceEnumerator::at(u64 index) const {
    if (index >= total_) throw std::invalid_argument("subspace index out of range");
    // locate the pattern block
    std::size_t t = std::upper_bound(offset_.begin(), offset_.end(), index) - offset_.begin() - 1;
    u64 local = index - offset_[t];
    const auto& pat = patterns_[t];
    const u64 q = field_->order();
    std::vector<char> is_pivot(N_, 0);
    for (unsigned c : pat) is_pivot[c] = 1;
    Mat m(field_, k_, N_);
    for (unsigned i = 0; i < k_; ++i) m.at(i, pat[i]) = 1;
    // free positions in row-major order; first position most significant
    std::vector<std::pair<unsigned, unsigned>> free_pos;
    for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = pat[i] + 1; j < N_; ++j)
            if (!is_pivot[j]) free_pos.emplace_back(i, j);
    for (std::size_t t2 = free_pos.size(); t2-- > 0;) {
        m.at(free_pos[t2].first, free_pos[t2].second) = local % q;
        local /= q;
    }
    return Subspace::from_rref(std::move(m));
}

}  // namespace rmc
