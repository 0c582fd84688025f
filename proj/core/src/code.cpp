#include "rmc/code.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

namespace rmc {

namespace {

u64 checked_pow_u64(u64 q, unsigned e, const char* what) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (u64(1) << 62) / q) throw std::overflow_error(std::string(what) + ": overflow");
        r *= q;
    }
    return r;
}

}  // namespace

std::map<std::size_t, u64> detail::parallel_weight_counts(
    u64 total, unsigned threads,
    const std::function<void(u64, u64, std::map<std::size_t, u64>&)>& work) {
    if (threads <= 1 || total < 1024) {
        std::map<std::size_t, u64> counts;
        work(0, total, counts);
        return counts;
    }
    unsigned T = std::min<u64>(threads, std::max<u64>(1, total / 256));
    std::vector<std::map<std::size_t, u64>> parts(T);
    std::vector<std::thread> pool;
    u64 chunk = (total + T - 1) / T;
    for (unsigned t = 0; t < T; ++t) {
        u64 lo = std::min<u64>(total, t * chunk);
        u64 hi = std::min<u64>(total, lo + chunk);
        pool.emplace_back([&, t, lo, hi] { work(lo, hi, parts[t]); });
    }
    for (auto& th : pool) th.join();
    std::map<std::size_t, u64> counts;
    for (const auto& part : parts)
        for (const auto& [w, c] : part) counts[w] += c;
    return counts;
}

std::pair<u64, unsigned> prime_power_decompose(u64 q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    u64 p = q;
    for (u64 d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    unsigned e = 0;
    u64 t = q;
    while (t % p == 0) {
        t /= p;
        ++e;
    }
    if (t != 1) throw std::invalid_argument("field order is not a prime power");
    return {p, e};
}

FieldPtr canonical_field_of_order(u64 q) {
    auto [p, e] = prime_power_decompose(q);
    return Field::canonical(p, e);
}

u64 WeightDistribution::total() const {
    u64 t = 0;
    for (const auto& [w, c] : counts) t += c;
    return t;
}

std::size_t WeightDistribution::min_distance() const {
    for (const auto& [w, c] : counts)
        if (w > 0 && c > 0) return w;
    throw std::logic_error("weight distribution has no nonzero weight");
}

std::vector<std::size_t> WeightDistribution::support() const {
    std::vector<std::size_t> s;
    for (const auto& [w, c] : counts)
        if (w > 0 && c > 0) s.push_back(w);
    return s;
}

u64 projective_rep_count(u64 order, std::size_t k) {
    u64 total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        u64 block = checked_pow_u64(order, (unsigned)i, "projective class count");
        if (total > (u64(1) << 62) - block) throw std::overflow_error("projective class count: overflow");
        total += block;
    }
    return total;
}

std::vector<u64> projective_rep_at(const FieldPtr& f, std::size_t k, u64 index) {
    const u64 q = f->order();
    // lead position k-1 first (smallest big-endian keys), then k-2, ...
    for (std::size_t step = 0; step < k; ++step) {
        std::size_t lead = k - 1 - step;
        u64 block = checked_pow_u64(q, (unsigned)step, "projective rep");
        if (index < block) {
            std::vector<u64> v(k, 0);
            v[lead] = 1;
            for (std::size_t j = k; j-- > lead + 1;) {
                v[j] = index % q;
                index /= q;
            }
            return v;
        }
        index -= block;
    }
    throw std::invalid_argument("projective representative index out of range");
}

// ---- RankCode / QSystem ----

RankCode RankCode::from_generator(Mat G, Embedding base) {
    if (!G.field || !G.field->same(*base.sup()))
        throw std::invalid_argument("generator field does not match the embedding's extension field");
    if (G.rows == 0 || G.cols == 0) throw std::invalid_argument("empty generator");
    if (G.cols < G.rows) throw std::invalid_argument("generator needs n >= k");
    if (mat_rank(G) != G.rows) throw std::invalid_argument("generator is rank-deficient over the extension field");
    return RankCode(std::move(G), std::move(base));
}

QSystem RankCode::q_system() const { return QSystem(*this); }

bool RankCode::is_nondegenerate() const { return q_system().dim() == n(); }

std::pair<RankCode, Mat> RankCode::compress_degenerate() const {
    QSystem X(*this);
    const std::size_t n0 = n(), np = X.dim();
    const FieldPtr& F_sub = sub();
    if (np == n0) return {*this, Mat::identity(F_sub, n0)};
    // kernel of lambda -> sum lambda_j * g_j, as a subspace of sub^n
    Mat cols(F_sub, X.ambient_dim(), n0);
    for (std::size_t j = 0; j < n0; ++j) {
        std::vector<u64> ex = X.expand_vector(X.columns()[j]);
        for (std::size_t i = 0; i < ex.size(); ++i) cols.at(i, j) = ex[i];
    }
    Subspace ker = kernel(cols);
    // columns of M: greedy unit-vector completion of the kernel, then the
    // kernel basis (so trailing columns of G*M vanish)
    Mat M = complement_transform(ker);
    Mat GM = mul_lifted(G_, M, base_);
    Mat Gc(sup(), k(), np);
    for (std::size_t i = 0; i < k(); ++i)
        for (std::size_t j = 0; j < np; ++j) Gc.at(i, j) = GM.at(i, j);
    for (std::size_t i = 0; i < k(); ++i)
        for (std::size_t j = np; j < n0; ++j)
            if (GM.at(i, j) != 0) throw std::logic_error("compression left a nonzero trailing column");
    return {RankCode::from_generator(std::move(Gc), base_), std::move(M)};
}

QSystem::QSystem(const RankCode& C)
    : base_(C.base()),
      k_(C.k()),
      expanded_(Subspace::zero(C.sub(), (std::size_t)C.m() * C.k())) {
    const Mat& G = C.generator();
    columns_.resize(C.n());
    for (std::size_t j = 0; j < C.n(); ++j) {
        columns_[j].resize(k_);
        for (std::size_t i = 0; i < k_; ++i) columns_[j][i] = G.at(i, j);
    }
    std::vector<std::vector<u64>> expanded;
    expanded.reserve(C.n());
    const std::size_t amb = (std::size_t)C.m() * k_;
    for (const auto& col : columns_) {
        std::vector<u64> v;
        v.reserve(amb);
        for (u64 entry : col) {
            std::vector<u64> c = base_.coords(entry);
            v.insert(v.end(), c.begin(), c.end());
        }
        expanded.push_back(std::move(v));
    }
    expanded_ = Subspace::from_vectors(C.sub(), amb, expanded);
}

std::vector<u64> QSystem::expand_vector(const std::vector<u64>& v) const {
    if (v.size() != k_) throw std::invalid_argument("vector has wrong length");
    std::vector<u64> r;
    r.reserve(expanded_.ambient());
    for (u64 entry : v) {
        std::vector<u64> c = base_.coords(entry);
        r.insert(r.end(), c.begin(), c.end());
    }
    return r;
}

Mat covector_matrix(const RankCode& C, const std::vector<u64>& x) {
    if (x.size() != C.k()) throw std::invalid_argument("covector has wrong length");
    const Field& F = *C.sup();
    Mat T(C.sub(), C.m(), C.n());
    for (std::size_t l = 0; l < C.n(); ++l) {
        u64 s = 0;
        for (std::size_t i = 0; i < C.k(); ++i) s = F.add(s, F.mul(x[i], C.generator().at(i, l)));
        std::vector<u64> c = C.base().coords(s);
        for (std::size_t i = 0; i < c.size(); ++i) T.at(i, l) = c[i];
    }
    return T;
}

// ---- weight distributions ----

WeightDistribution rank_weight_distribution(const RankCode& C, u64 budget, unsigned threads) {
    const u64 qm = C.sup()->order();
    const u64 reps = projective_rep_count(qm, C.k());
    if (reps > budget) throw BudgetExceeded("rank weight distribution", reps, budget);
    auto counts = detail::parallel_weight_counts(
        reps, threads, [&](u64 lo, u64 hi, std::map<std::size_t, u64>& out) {
            for (u64 i = lo; i < hi; ++i) {
                std::vector<u64> x = projective_rep_at(C.sup(), C.k(), i);
                out[C.rank_weight(C.codeword(x))] += qm - 1;
            }
        });
    WeightDistribution d;
    d.metric = WeightDistribution::Metric::Rank;
    d.n = C.n();
    d.counts = std::move(counts);
    d.counts[0] += 1;
    return d;
}

WeightDistribution hyperplane_weight_distribution(const RankCode& C, u64 budget) {
    if (C.k() != 2) throw std::invalid_argument("hyperplane route requires dimension k = 2");
    const u64 qm = C.sup()->order();
    const u64 classes = qm + 1;
    if (classes > budget) throw BudgetExceeded("hyperplane scan", classes, budget);
    QSystem X(C);
    const Field& F = *C.sup();
    const std::size_t amb = X.ambient_dim();
    std::vector<u64> sup_basis = C.base().monomial_basis();
    WeightDistribution d;
    d.metric = WeightDistribution::Metric::Rank;
    d.n = C.n();
    d.counts[0] = 1;
    for (u64 i = 0; i < classes; ++i) {
        std::vector<u64> x = projective_rep_at(C.sup(), 2, i);
        // H_x = sup * (-x2, x1); expand a subfield basis of it
        std::vector<u64> h = {F.neg(x[1]), x[0]};
        std::vector<std::vector<u64>> gens;
        gens.reserve(sup_basis.size());
        for (u64 b : sup_basis) gens.push_back(X.expand_vector({F.mul(b, h[0]), F.mul(b, h[1])}));
        Subspace H = Subspace::from_vectors(C.sub(), amb, gens);
        std::size_t dim = intersect(X.expanded(), H).dim();
        d.counts[C.n() - dim] += qm - 1;
    }
    return d;
}

std::size_t min_distance(const RankCode& C, u64 budget) {
    return rank_weight_distribution(C, budget).min_distance();
}

bool is_mrd(const RankCode& C, u64 budget) {
    if (C.n() > C.m()) throw std::invalid_argument("MRD test requires n <= m over the base subfield");
    return min_distance(C, budget) == C.n() - C.k() + 1;
}

// ---- constructions ----

RankCode gabidulin(const Embedding& base, unsigned l, unsigned k,
                   std::optional<std::vector<u64>> g) {
    if (k == 0 || k > l) throw std::invalid_argument("gabidulin requires 1 <= k <= l");
    if (l > base.ratio()) throw std::invalid_argument("gabidulin length exceeds the extension degree");
    const FieldPtr& sup = base.sup();
    std::vector<u64> ev;
    if (g) {
        ev = *g;
        if (ev.size() != l) throw std::invalid_argument("evaluation vector has wrong length");
    } else {
        u64 beta = sup->generator();
        ev.resize(l);
        u64 cur = 1;
        for (unsigned j = 0; j < l; ++j) {
            ev[j] = cur;
            cur = sup->mul(cur, beta);
        }
    }
    if (rank_over_subfield(ev, base) != l)
        throw std::invalid_argument("evaluation vector entries are dependent over the base subfield");
    const u64 Q = base.sub()->order();
    Mat G(sup, k, l);
    for (unsigned j = 0; j < l; ++j) {
        u64 cur = ev[j];
        for (unsigned i = 0; i < k; ++i) {
            G.at(i, j) = cur;
            cur = sup->frobenius(cur, Q);
        }
    }
    return RankCode::from_generator(std::move(G), base);
}

RankCode hadamard_code(u64 q, unsigned m, unsigned k) {
    if (m == 0 || k == 0) throw std::invalid_argument("hadamard code requires m, k >= 1");
    auto [p, e] = prime_power_decompose(q);
    FieldPtr sub = Field::canonical(p, e);
    FieldPtr sup = Field::canonical(p, e * m);
    Embedding base = Embedding::build(sub, sup);
    std::vector<u64> basis = base.monomial_basis();
    Mat G(sup, k, (std::size_t)m * k);
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < m; ++j) G.at(i, (std::size_t)i * m + j) = basis[j];
    return RankCode::from_generator(std::move(G), std::move(base));
}

ConstantWeightClass classify_constant_weight(const RankCode& C, u64 budget) {
    if (!C.is_nondegenerate()) throw std::invalid_argument("constant-weight classification requires a non-degenerate code");
    WeightDistribution dist = rank_weight_distribution(C, budget);
    std::vector<std::size_t> sup = dist.support();
    if (sup.size() != 1) return {ConstantWeightKind::NotConstant, 0};
    const std::size_t w = sup[0];
    if (C.k() == 1) {
        if (w != C.n()) throw std::logic_error("constant-weight invariant violated: k=1 weight differs from length");
        return {ConstantWeightKind::DimOne, w};
    }
    if (C.n() != (std::size_t)C.m() * C.k() || w != C.m() || C.q_system().dim() != C.n())
        throw std::logic_error("constant-weight invariant violated: k>1 code is not of Hadamard shape");
    return {ConstantWeightKind::Hadamard, w};
}

// ---- equivalence ----

u64 gl_order(u64 q, unsigned n) {
    u64 qn = checked_pow_u64(q, n, "GL order");
    u64 r = 1;
    u64 qi = 1;
    using u128 = unsigned __int128;
    for (unsigned i = 0; i < n; ++i) {
        u128 next = (u128)r * (qn - qi);
        if (next > (u128)(u64(1) << 62)) throw std::overflow_error("GL order: overflow");
        r = (u64)next;
        qi *= q;
    }
    return r;
}

GLEnumerator::GLEnumerator(FieldPtr f, unsigned n) : field_(std::move(f)), n_(n) {
    qn_ = checked_pow_u64(field_->order(), n, "GL enumeration");
}

bool GLEnumerator::next(Mat& out) {
    if (done_) return false;
    auto vec_of = [&](u64 key) {
        std::vector<u64> v(n_);
        for (std::size_t j = n_; j-- > 0;) {
            v[j] = key % field_->order();
            key /= field_->order();
        }
        return v;
    };
    auto seek = [&](std::size_t row, u64 start) -> bool {
        std::vector<std::vector<u64>> prefix;
        for (std::size_t r = 0; r < row; ++r) prefix.push_back(vec_of(idx_[r]));
        Subspace span = prefix.empty() ? Subspace::zero(field_, n_)
                                       : Subspace::from_vectors(field_, n_, prefix);
        for (u64 key = start; key < qn_; ++key) {
            if (!span.contains(vec_of(key))) {
                idx_[row] = key;
                return true;
            }
        }
        return false;
    };
    if (idx_.empty()) {
        idx_.assign(n_, 0);
        for (std::size_t r = 0; r < n_; ++r)
            if (!seek(r, 0)) {
                done_ = true;
                return false;
            }
    } else {
        std::size_t r = n_;
        bool advanced = false;
        while (r-- > 0) {
            if (seek(r, idx_[r] + 1)) {
                for (std::size_t r2 = r + 1; r2 < n_; ++r2)
                    if (!seek(r2, 0)) throw std::logic_error("GL row completion failed");
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            done_ = true;
            return false;
        }
    }
    out = Mat(field_, n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        std::vector<u64> v = vec_of(idx_[i]);
        for (std::size_t j = 0; j < n_; ++j) out.at(i, j) = v[j];
    }
    return true;
}

Mat mul_lifted(const Mat& G, const Mat& M_sub, const Embedding& e) {
    if (!G.field->same(*e.sup()) || !M_sub.field->same(*e.sub()))
        throw std::invalid_argument("mul_lifted: field mismatch");
    if (G.cols != M_sub.rows) throw std::invalid_argument("mul_lifted: dimension mismatch");
    const Field& F = *G.field;
    Mat C(G.field, G.rows, M_sub.cols);
    for (std::size_t i = 0; i < G.rows; ++i)
        for (std::size_t l = 0; l < G.cols; ++l) {
            u64 v = G.at(i, l);
            if (v == 0) continue;
            for (std::size_t j = 0; j < M_sub.cols; ++j) {
                u64 s = M_sub.at(l, j);
                if (s != 0) C.at(i, j) = F.add(C.at(i, j), F.mul(v, e.map(s)));
            }
        }
    return C;
}

EquivalenceResult codes_equivalent(const RankCode& C1, const RankCode& C2, u64 budget) {
    if (!C1.sup()->same(*C2.sup()) || !C1.sub()->same(*C2.sub()))
        throw std::invalid_argument("equivalence requires identical field data");
    if (C1.n() != C2.n() || C1.k() != C2.k())
        throw std::invalid_argument("equivalence requires equal length and dimension");
    const u64 q = C1.q(), qm = C1.sup()->order();
    const unsigned n = (unsigned)C1.n();
    u64 scan;
    {
        using u128 = unsigned __int128;
        u128 total = (u128)gl_order(q, n) * ((qm - 1) / (q - 1));
        if (total > budget) {
            EquivalenceResult r;
            r.status = EquivalenceResult::Status::Budget;
            return r;
        }
        scan = (u64)total;
    }
    (void)scan;
    // scalar factors do not move row spaces, so the alpha scan reduces to the
    // first class representative alpha = 1
    Mat R1 = rref(C1.generator()).m;
    // lift table for base-subfield entries
    std::vector<u64> lift(q);
    for (u64 s = 0; s < q; ++s) lift[s] = C1.base().map(s);
    const Field& F = *C1.sup();
    const Mat& G2 = C2.generator();
    GLEnumerator gl(C1.sub(), n);
    Mat M;
    while (gl.next(M)) {
        Mat GM(C1.sup(), G2.rows, n);
        for (std::size_t i = 0; i < G2.rows; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                u64 v = G2.at(i, l);
                if (v == 0) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    u64 s = M.at(l, j);
                    if (s != 0) GM.at(i, j) = F.add(GM.at(i, j), F.mul(v, lift[s]));
                }
            }
        if (rref(GM).m == R1) {
            EquivalenceResult r;
            r.status = EquivalenceResult::Status::Yes;
            r.alpha = 1;
            r.M = std::move(M);
            return r;
        }
    }
    EquivalenceResult r;
    r.status = EquivalenceResult::Status::No;
    return r;
}

}  // namespace rmc
