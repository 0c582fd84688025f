#include "rmc/spread.hpp"

#include <stdexcept>

#include "rmc/atw.hpp"

namespace rmc {

namespace {

using u128 = unsigned __int128;

// (q^N - 1)/(q^t - 1) when t | N; nullopt when the division is not exact.
std::optional<u64> spread_size(u64 q, std::size_t N, std::size_t t) {
    u128 qn = 1, qt = 1;
    for (std::size_t i = 0; i < N; ++i) {
        qn *= q;
        if (qn > (u128)(u64(1) << 62)) throw std::overflow_error("spread size: overflow");
    }
    for (std::size_t i = 0; i < t; ++i) qt *= q;
    if ((qn - 1) % (qt - 1) != 0) return std::nullopt;
    return (u64)((qn - 1) / (qt - 1));
}

}  // namespace

SpreadDiagnostics verify_spread(const Spread& S) {
    if (S.t == 0 || S.N == 0 || S.N % S.t != 0) return {false, "divisibility"};
    for (const Subspace& e : S.elements)
        if (e.ambient() != S.N || !e.field()->same(*S.field) || e.dim() != S.t)
            return {false, "equidimensionality"};
    for (std::size_t i = 0; i < S.elements.size(); ++i)
        for (std::size_t j = i + 1; j < S.elements.size(); ++j)
            if (intersect(S.elements[i], S.elements[j]).dim() != 0)
                return {false, "pairwise intersection"};
    std::optional<u64> expected = spread_size(S.field->order(), S.N, S.t);
    if (!expected || S.elements.size() != *expected) return {false, "count"};
    return {true, ""};
}

Spread desarguesian_spread(unsigned l, unsigned t, u64 q) {
    if (l == 0 || t == 0) throw std::invalid_argument("spread parameters must be positive");
    auto [p, e] = prime_power_decompose(q);
    FieldPtr sub = Field::canonical(p, e);
    FieldPtr K = Field::canonical(p, e * t);
    Embedding emb = Embedding::build(sub, K);
    std::vector<u64> basis = emb.monomial_basis();
    const std::size_t N = (std::size_t)t * l;
    Spread S;
    S.field = sub;
    S.N = N;
    S.t = t;
    const u64 reps = projective_rep_count(K->order(), l);
    for (u64 i = 0; i < reps; ++i) {
        std::vector<u64> v = projective_rep_at(K, l, i);
        std::vector<std::vector<u64>> gens;
        gens.reserve(t);
        for (u64 b : basis) {
            std::vector<u64> g;
            g.reserve(N);
            for (u64 coord : v) {
                std::vector<u64> c = emb.coords(K->mul(b, coord));
                g.insert(g.end(), c.begin(), c.end());
            }
            gens.push_back(std::move(g));
        }
        S.elements.push_back(Subspace::from_vectors(sub, N, gens));
    }
    return S;
}

Spread spread_from_atw(const RankCode& C, u64 budget) {
    if (C.k() != 2) throw std::invalid_argument("spread extraction requires a dimension-2 code");
    const u64 qm = C.sup()->order();
    const u64 classes = qm + 1;
    if (classes > budget) throw BudgetExceeded("hyperplane scan", classes, budget);
    const std::size_t n = C.n();
    std::size_t t = 0;  // common nonzero kernel dimension
    bool saw_zero = false;
    std::vector<Subspace> elements;
    for (u64 i = 0; i < classes; ++i) {
        std::vector<u64> x = projective_rep_at(C.sup(), 2, i);
        Subspace ker = kernel(covector_matrix(C, x));
        if (ker.dim() == 0) {
            saw_zero = true;
            continue;
        }
        if (t == 0) t = ker.dim();
        if (ker.dim() != t)
            throw std::invalid_argument("hyperplane intersection of unexpected dimension: input is not antipodal");
        elements.push_back(std::move(ker));
    }
    if (!saw_zero)
        throw std::invalid_argument("no full-rank codeword: input is not antipodal");
    std::optional<u64> expected = spread_size(C.q(), n, t);
    if (!expected || elements.size() != *expected)
        throw std::logic_error("extracted family violates the counting identity");
    Spread S;
    S.field = C.sub();
    S.N = n;
    S.t = t;
    S.elements = std::move(elements);
    SpreadDiagnostics diag = verify_spread(S);
    if (!diag.valid)
        throw std::logic_error("extracted family fails spread axiom: " + diag.violation);
    return S;
}

std::vector<Subspace> direct_sum_split(const Spread& S) {
    SpreadDiagnostics diag = verify_spread(S);
    if (!diag.valid) throw std::invalid_argument("invalid spread: " + diag.violation);
    const std::size_t l = S.N / S.t;
    std::vector<Subspace> picked;
    Subspace acc = Subspace::zero(S.field, S.N);
    for (const Subspace& e : S.elements) {
        if (picked.size() == l) break;
        if (intersect(acc, e).dim() == 0) {
            picked.push_back(e);
            acc = sum(acc, e);
        }
    }
    if (picked.size() != l || acc.dim() != S.N)
        throw std::logic_error("greedy split failed to reach the ambient space");
    return picked;
}

std::pair<std::vector<Subspace>, SubspreadReport> project_spread(const Spread& S,
                                                                 const Subspace& W) {
    if (W.ambient() != S.N || !W.field()->same(*S.field))
        throw std::invalid_argument("projection target lives in a different ambient space");
    std::vector<Subspace> parts;
    for (const Subspace& e : S.elements) {
        Subspace I = intersect(e, W);
        if (I.dim() > 0) parts.push_back(std::move(I));
    }
    SubspreadReport rep;
    rep.count = parts.size();
    if (parts.empty()) return {parts, rep};
    std::size_t tp = parts.front().dim();
    for (const Subspace& e : parts)
        if (e.dim() != tp) return {parts, rep};  // mixed dimensions
    rep.t_prime = (long long)tp;
    std::optional<u64> expected = spread_size(S.field->order(), W.dim(), tp);
    rep.is_subspread = expected && parts.size() == *expected;
    return {parts, rep};
}

SpreadCorrespondence verify_spread_correspondence(const RankCode& C, u64 budget) {
    if (C.k() != 2) throw std::invalid_argument("correspondence requires a dimension-2 code");
    SpreadCorrespondence res;
    AtwReport rep = analyze_atw(C, budget);
    res.atw = rep.antipodal;
    const std::size_t d = rep.d;

    // hyperplane spread of sup^2 in expanded coordinates, projected onto the
    // expanded q-system
    const u64 qm = C.sup()->order();
    if (qm + 1 > budget) throw BudgetExceeded("hyperplane scan", qm + 1, budget);
    const unsigned m = C.m();
    QSystem X(C);
    std::vector<u64> basis = C.base().monomial_basis();
    const Field& F = *C.sup();
    Spread delta;
    delta.field = C.sub();
    delta.N = 2 * (std::size_t)m;
    delta.t = m;
    for (u64 i = 0; i < qm + 1; ++i) {
        std::vector<u64> x = projective_rep_at(C.sup(), 2, i);
        std::vector<u64> h = {F.neg(x[1]), x[0]};
        std::vector<std::vector<u64>> gens;
        gens.reserve(m);
        for (u64 b : basis) gens.push_back(X.expand_vector({F.mul(b, h[0]), F.mul(b, h[1])}));
        delta.elements.push_back(Subspace::from_vectors(C.sub(), delta.N, gens));
    }
    auto [parts, sub_rep] = project_spread(delta, X.expanded());
    res.subspread = sub_rep.is_subspread && sub_rep.t_prime == (long long)(C.n() - d);
    res.agree = res.atw == res.subspread;
    return res;
}

bool is_fieldlinear_spread(const Spread& S, const Mat& T) {
    if (T.rows != S.N || T.cols != S.N || !T.field->same(*S.field))
        throw std::invalid_argument("scalar action has the wrong shape");
    for (const Subspace& e : S.elements)
        for (std::size_t i = 0; i < e.dim(); ++i)
            if (!e.contains(mat_vec(T, e.basis().row(i)))) return false;
    return true;
}

Mat qsystem_scalar_action(const RankCode& C, unsigned t) {
    if (t == 0 || C.m() % t != 0)
        throw std::invalid_argument("subfield degree does not divide m");
    auto [p, e] = prime_power_decompose(C.q());
    FieldPtr mid = Field::canonical(p, e * t);
    u64 s = Embedding::build(mid, C.sup()).map(mid->generator());
    const Field& F = *C.sup();
    QSystem X(C);
    const std::size_t n = C.n();
    Mat cols(C.sub(), X.ambient_dim(), n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<u64> ex = X.expand_vector(X.columns()[j]);
        for (std::size_t i = 0; i < ex.size(); ++i) cols.at(i, j) = ex[i];
    }
    Mat T(C.sub(), n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<u64> target(C.k());
        for (std::size_t i = 0; i < C.k(); ++i) target[i] = F.mul(s, X.columns()[j][i]);
        std::optional<std::vector<u64>> lam = solve_linear(cols, X.expand_vector(target));
        if (!lam)
            throw std::invalid_argument("q-system is not closed under the requested subfield");
        for (std::size_t i = 0; i < n; ++i) T.at(i, j) = (*lam)[i];
    }
    return T;
}

Mat desarguesian_scalar_action(unsigned l, unsigned t, u64 q) {
    if (l == 0 || t == 0) throw std::invalid_argument("spread parameters must be positive");
    auto [p, e] = prime_power_decompose(q);
    FieldPtr sub = Field::canonical(p, e);
    FieldPtr K = Field::canonical(p, e * t);
    Embedding emb = Embedding::build(sub, K);
    std::vector<u64> basis = emb.monomial_basis();
    u64 s = K->generator();
    Mat block(sub, t, t);
    for (unsigned j = 0; j < t; ++j) {
        std::vector<u64> c = emb.coords(K->mul(s, basis[j]));
        for (unsigned i = 0; i < t; ++i) block.at(i, j) = c[i];
    }
    const std::size_t N = (std::size_t)t * l;
    Mat T(sub, N, N);
    for (unsigned b = 0; b < l; ++b)
        for (unsigned i = 0; i < t; ++i)
            for (unsigned j = 0; j < t; ++j)
                T.at((std::size_t)b * t + i, (std::size_t)b * t + j) = block.at(i, j);
    return T;
}

}  // namespace rmc
