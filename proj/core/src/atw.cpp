#include "rmc/atw.hpp"

#include <stdexcept>

namespace rmc {

namespace {

using u128 = unsigned __int128;

u64 pow_u128_checked(u64 q, unsigned e, const char* what) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= q;
        if (r > (u128)(u64(1) << 62)) throw std::overflow_error(std::string(what) + ": overflow");
    }
    return (u64)r;
}

// b_i = embedded F_q-basis {z^i} of the subfield F_{q^d} inside sup, where z
// is the class-of-x image of the canonical degree-e*d field.
std::vector<u64> embedded_subfield_basis(u64 p, unsigned e, unsigned d, const FieldPtr& sup) {
    FieldPtr mid = Field::canonical(p, e * d);
    Embedding me = Embedding::build(mid, sup);
    u64 z = me.map(mid->class_of_x());
    std::vector<u64> b(d);
    u64 cur = 1;
    for (unsigned i = 0; i < d; ++i) {
        b[i] = cur;
        cur = sup->mul(cur, z);
    }
    return b;
}

}  // namespace

AtwReport analyze_atw(const RankCode& C, u64 budget, unsigned threads) {
    AtwReport rep;
    rep.dist = rank_weight_distribution(C, budget, threads);
    std::vector<std::size_t> sup = rep.dist.support();
    rep.d = sup.empty() ? 0 : sup.front();
    rep.d2 = sup.size() >= 2 ? sup[1] : 0;
    rep.two_weight = sup.size() == 2;
    rep.antipodal = rep.two_weight && rep.d2 == C.n();
    if (!rep.antipodal) return rep;
    if (C.k() != 2)
        throw std::logic_error("antipodal two-weight code of dimension > 2: nonexistence violated");
    const u64 q = C.q(), qm = C.sup()->order();
    const std::size_t n = C.n(), d = rep.d;
    u64 qn = pow_u128_checked(q, (unsigned)n, "codeword count");
    u64 qnd = pow_u128_checked(q, (unsigned)(n - d), "codeword count");
    if ((qn - 1) % (qnd - 1) != 0)
        throw std::logic_error("antipodal code violates the (n-d) | n divisibility");
    u64 classes_d = (qn - 1) / (qnd - 1);  // hyperplanes meeting X nontrivially
    rep.predicted[0] = 1;
    rep.predicted[d] = (qm - 1) * classes_d;
    rep.predicted[n] = (qm - 1) * (qm + 1 - classes_d);
    if (rep.predicted != rep.dist.counts)
        throw std::logic_error("antipodal weight distribution differs from the predicted counts");
    return rep;
}

RankCode two_block_atw(u64 q, unsigned d, unsigned m) {
    if (d == 0) throw std::invalid_argument("block width d must be positive");
    if (m % d != 0) throw std::invalid_argument("d must divide m");
    if (d >= m) throw std::invalid_argument("d = m leaves no full-rank codeword; require d < m");
    auto [p, e] = prime_power_decompose(q);
    FieldPtr sub = Field::canonical(p, e);
    FieldPtr sup = Field::canonical(p, e * m);
    std::vector<u64> b = embedded_subfield_basis(p, e, d, sup);
    Mat G(sup, 2, 2 * (std::size_t)d);
    for (unsigned i = 0; i < d; ++i) {
        G.at(0, d + i) = b[i];
        G.at(1, i) = b[i];
    }
    return RankCode::from_generator(std::move(G), Embedding::build(sub, sup));
}

RankCode block_diagonal_two_weight(u64 q, unsigned d, unsigned k) {
    if (d == 0) throw std::invalid_argument("block width d must be positive");
    if (k <= 2) throw std::invalid_argument("block-diagonal construction requires dimension k > 2");
    auto [p, e] = prime_power_decompose(q);
    FieldPtr sub = Field::canonical(p, e);
    FieldPtr sup = Field::canonical(p, e * 2 * d);
    std::vector<u64> b = embedded_subfield_basis(p, e, d, sup);
    Mat G(sup, k, (std::size_t)k * d);
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < d; ++j) G.at(i, (std::size_t)i * d + j) = b[j];
    return RankCode::from_generator(std::move(G), Embedding::build(sub, sup));
}

NormalForm atw_normal_form(const RankCode& C, u64 budget) {
    AtwReport rep = analyze_atw(C, budget);
    if (!rep.antipodal) throw std::invalid_argument("input is not an antipodal two-weight code");
    const Field& F = *C.sup();
    const std::size_t k = C.k(), n = C.n(), d = rep.d;

    // first projective representative whose codeword has full rank
    std::vector<u64> x;
    const u64 reps = projective_rep_count(F.order(), k);
    for (u64 i = 0; i < reps; ++i) {
        std::vector<u64> cand = projective_rep_at(C.sup(), k, i);
        if (C.rank_weight(C.codeword(cand)) == n) {
            x = std::move(cand);
            break;
        }
    }
    if (x.empty()) throw std::logic_error("no full-rank codeword despite antipodality");

    // row transform: x on top, completed by unit rows skipping x's first
    // nonzero position
    Mat S(C.sup(), k, k);
    std::size_t lead = 0;
    while (x[lead] == 0) ++lead;
    for (std::size_t j = 0; j < k; ++j) S.at(0, j) = x[j];
    std::size_t r0 = 1;
    for (std::size_t j = 0; j < k; ++j)
        if (j != lead) S.at(r0++, j) = 1;
    Mat G1 = mat_mul(S, C.generator());
    for (std::size_t j = 0; j < n; ++j)
        if (G1.at(0, j) == 0) throw std::logic_error("full-rank codeword has a zero coordinate");

    // clear the last coordinate of the remaining rows against the top row
    for (std::size_t i = 1; i < k; ++i) {
        u64 lam = F.mul(G1.at(i, n - 1), F.inv(G1.at(0, n - 1)));
        if (lam == 0) continue;
        for (std::size_t j = 0; j < n; ++j) G1.at(i, j) = F.sub(G1.at(i, j), F.mul(lam, G1.at(0, j)));
        for (std::size_t j = 0; j < k; ++j) S.at(i, j) = F.sub(S.at(i, j), F.mul(lam, S.at(0, j)));
    }

    // columns of the lower rows span a (n-r)-dim space over the subfield;
    // compress it to the leading columns
    Mat lower(C.sup(), k - 1, n);
    for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) lower.at(i - 1, j) = G1.at(i, j);
    QSystem lower_sys(RankCode::from_generator(std::move(lower), C.base()));
    Mat colmat(C.sub(), lower_sys.ambient_dim(), n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<u64> ex = lower_sys.expand_vector(lower_sys.columns()[j]);
        for (std::size_t i = 0; i < ex.size(); ++i) colmat.at(i, j) = ex[i];
    }
    Mat M = complement_transform(kernel(colmat));
    Mat Gn = mul_lifted(G1, M, C.base());

    const std::size_t width = lower_sys.dim();  // = d for a k = 2 input
    const std::size_t r = n - width;
    for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = width; j < n; ++j)
            if (Gn.at(i, j) != 0) throw std::logic_error("zero block of the normal form is not zero");
    if (k == 2) {
        if (width != d) throw std::logic_error("lower-row span width differs from the distance");
        std::vector<u64> A(width);
        for (std::size_t j = 0; j < width; ++j) A[j] = Gn.at(1, j);
        if (rank_over_subfield(A, C.base()) != width)
            throw std::logic_error("compressed lower row is degenerate");
    }
    if (C.rank_weight(Gn.row(0)) != n) throw std::logic_error("top row lost full rank");
    if (mul_lifted(mat_mul(S, C.generator()), M, C.base()) != Gn)
        throw std::logic_error("normal form witnesses do not reproduce the result");
    NormalForm nf;
    nf.g = std::move(Gn);
    nf.r = r;
    nf.row_transform = std::move(S);
    nf.column_transform = std::move(M);
    return nf;
}

RankCode expand_mrd_to_atw(const RankCode& C_mrd, const FieldPtr& base_field, u64 budget) {
    if (C_mrd.k() != 2) throw std::invalid_argument("expansion requires a dimension-2 input");
    if (!base_field) throw std::invalid_argument("missing base field");
    if (base_field->p() != C_mrd.sub()->p() ||
        C_mrd.sub()->degree() % base_field->degree() != 0)
        throw std::invalid_argument("base field does not embed in the input's subfield");
    if (!is_mrd(C_mrd, budget)) throw std::invalid_argument("input is not MRD");
    Embedding emb_qt = Embedding::build(base_field, C_mrd.sub());
    const unsigned t = emb_qt.ratio();
    std::vector<u64> a = emb_qt.monomial_basis();
    for (u64& v : a) v = C_mrd.base().map(v);  // lift the basis of F_{q^t} into sup
    const Field& F = *C_mrd.sup();
    const std::size_t l = C_mrd.n();
    Mat G(C_mrd.sup(), 2, l * t);
    for (std::size_t row = 0; row < 2; ++row)
        for (std::size_t i = 0; i < l; ++i)
            for (unsigned j = 0; j < t; ++j)
                G.at(row, i * t + j) = F.mul(a[j], C_mrd.generator().at(row, i));
    return RankCode::from_generator(std::move(G), Embedding::build(base_field, C_mrd.sup()));
}

bool is_induced_by_mrd(const RankCode& C, u64 budget) {
    AtwReport rep = analyze_atw(C, budget);
    if (!rep.antipodal) throw std::invalid_argument("input is not an antipodal two-weight code");
    const unsigned t = (unsigned)(C.n() - rep.d);
    if (C.m() % t != 0) throw std::invalid_argument("n - d does not divide m");
    auto [p, e] = prime_power_decompose(C.q());
    FieldPtr mid = Field::canonical(p, e * t);
    u64 s = Embedding::build(mid, C.sup()).map(mid->generator());
    const Field& F = *C.sup();
    QSystem X(C);
    for (const auto& col : X.columns()) {
        std::vector<u64> sc(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) sc[i] = F.mul(s, col[i]);
        if (!X.contains(sc)) return false;
    }
    return true;
}

HalfClassification classify_half_distance(const RankCode& C, u64 budget) {
    if (C.k() != 2 || C.n() % 2 != 0)
        throw std::invalid_argument("classifier requires an [n, 2] code with even n");
    const std::size_t n = C.n(), d = n / 2;
    const u64 qm = C.sup()->order();
    const u64 classes = qm + 1;
    if (classes > budget) throw BudgetExceeded("hyperplane scan", classes, budget);
    const Field& F = *C.sup();

    bool saw_full_rank = false;
    std::vector<std::pair<std::vector<u64>, Subspace>> blocks;  // (covector, kernel)
    for (u64 i = 0; i < classes; ++i) {
        std::vector<u64> x = projective_rep_at(C.sup(), 2, i);
        Subspace ker = kernel(covector_matrix(C, x));
        if (ker.dim() == 0)
            saw_full_rank = true;
        else if (ker.dim() == d)
            blocks.emplace_back(std::move(x), std::move(ker));
        else
            return {};  // some weight other than {d, n}
    }
    if (!saw_full_rank) return {};  // constant weight or degenerate
    u64 qd = pow_u128_checked(C.q(), (unsigned)d, "hyperplane count");
    if (blocks.size() != qd + 1)
        throw std::logic_error("hyperplane partition violates the counting identity");

    // columns from the first two blocks; rows from their covectors
    Mat M(C.sub(), n, n);
    for (std::size_t half = 0; half < 2; ++half) {
        const Mat& B = blocks[half].second.basis();
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < n; ++i) M.at(i, half * d + j) = B.at(j, i);
    }
    if (mat_rank(M) != n) throw std::logic_error("spread blocks do not decompose the q-system");
    Mat S(C.sup(), 2, 2);
    for (std::size_t j = 0; j < 2; ++j) {
        S.at(0, j) = blocks[0].first[j];
        S.at(1, j) = blocks[1].first[j];
    }
    Mat G1 = mul_lifted(mat_mul(S, C.generator()), M, C.base());
    for (std::size_t j = 0; j < d; ++j)
        if (G1.at(0, j) != 0 || G1.at(1, d + j) != 0)
            throw std::logic_error("block decomposition left entries outside the antidiagonal");

    // scale both rows to leading entry 1
    for (std::size_t row = 0; row < 2; ++row) {
        u64 head = G1.at(row, row == 0 ? d : 0);
        if (head == 0) throw std::logic_error("antidiagonal block has a zero leading entry");
        u64 inv = F.inv(head);
        for (std::size_t j = 0; j < n; ++j) G1.at(row, j) = F.mul(inv, G1.at(row, j));
        for (std::size_t j = 0; j < 2; ++j) S.at(row, j) = F.mul(inv, S.at(row, j));
    }
    std::vector<u64> e1(d), e2(d);
    for (std::size_t j = 0; j < d; ++j) {
        e1[j] = G1.at(0, d + j);
        e2[j] = G1.at(1, j);
    }

    const unsigned m = C.m();
    auto span_of = [&](const std::vector<u64>& v) {
        std::vector<std::vector<u64>> gens;
        for (u64 a : v) gens.push_back(C.base().coords(a));
        return Subspace::from_vectors(C.sub(), m, gens);
    };
    Subspace span1 = span_of(e1);
    if (span1 != span_of(e2)) throw std::logic_error("the two block spans differ");

    // column transform on the first block carrying e2 to e1
    Mat M2(C.sub(), d, d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<u64> c = C.base().coords_in_basis(e1[j], e2);
        for (std::size_t i = 0; i < d; ++i) M2.at(i, j) = c[i];
    }
    if (mat_rank(M2) != d) throw std::logic_error("block-matching transform is singular");
    Mat blockM = Mat::identity(C.sub(), n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) blockM.at(i, j) = M2.at(i, j);
    Mat Mtotal = mat_mul(M, blockM);
    Mat G2 = mul_lifted(mat_mul(S, C.generator()), Mtotal, C.base());
    for (std::size_t j = 0; j < d; ++j) {
        if (G2.at(0, j) != 0 || G2.at(1, d + j) != 0 || G2.at(0, d + j) != e1[j] ||
            G2.at(1, j) != e1[j])
            throw std::logic_error("canonical form does not have matching blocks");
    }

    if (m % d != 0) throw std::logic_error("antipodality at d = n/2 requires d | m");
    auto [p, e] = prime_power_decompose(C.q());
    std::vector<u64> field_basis = embedded_subfield_basis(p, e, (unsigned)d, C.sup());
    if (span1 != span_of(field_basis))
        throw std::logic_error("canonical entries do not span the embedded subfield");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (!span1.contains(C.base().coords(F.mul(e1[i], e1[j]))))
                throw std::logic_error("canonical entry span is not multiplicatively closed");

    HalfClassification res;
    res.kind = HalfKind::Canonical;
    res.canonical = std::move(G2);
    res.subfield_basis = std::move(e1);
    return res;
}

}  // namespace rmc
