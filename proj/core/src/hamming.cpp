#include "rmc/hamming.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmc {

namespace {

using u128 = unsigned __int128;

u64 pow_checked(u64 q, std::size_t e, const char* what) {
    u128 r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= q;
        if (r > (u128)(u64(1) << 62)) throw std::overflow_error(std::string(what) + ": overflow");
    }
    return (u64)r;
}

// basis of the q-system as vectors in sup^k (expanded RREF rows folded back)
std::vector<std::vector<u64>> system_basis(const QSystem& X) {
    const unsigned m = X.base().ratio();
    std::vector<std::vector<u64>> out;
    for (std::size_t i = 0; i < X.dim(); ++i) {
        std::vector<u64> row = X.expanded().basis().row(i);
        std::vector<u64> v(X.k());
        for (std::size_t c = 0; c < X.k(); ++c)
            v[c] = X.base().from_coords(
                std::vector<u64>(row.begin() + c * m, row.begin() + (c + 1) * m));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

ProjectiveSystem projective_system(const QSystem& X, u64 budget) {
    const std::size_t n = X.dim();
    if (n == 0) throw std::invalid_argument("zero system has no projective points");
    const FieldPtr& sub = X.base().sub();
    const FieldPtr& sup = X.base().sup();
    const u64 q = sub->order();
    const u64 reps = projective_rep_count(q, n);
    if (reps > budget) throw BudgetExceeded("projective system", reps, budget);
    std::vector<std::vector<u64>> basis = system_basis(X);
    const Field& F = *sup;
    ProjectiveSystem P;
    P.field = sup;
    P.k = X.k();
    P.points.reserve(reps);
    for (u64 i = 0; i < reps; ++i) {
        std::vector<u64> lam = projective_rep_at(sub, n, i);
        std::vector<u64> v(X.k(), 0);
        for (std::size_t l = 0; l < n; ++l) {
            if (lam[l] == 0) continue;
            u64 s = X.base().map(lam[l]);
            for (std::size_t c = 0; c < X.k(); ++c) v[c] = F.add(v[c], F.mul(s, basis[l][c]));
        }
        // orbit representative: smallest tuple among the q-1 scalings
        std::vector<u64> best = v;
        for (u64 a = 2; a < q; ++a) {
            u64 s = X.base().map(a);
            std::vector<u64> w(X.k());
            for (std::size_t c = 0; c < X.k(); ++c) w[c] = F.mul(s, v[c]);
            if (w < best) best = std::move(w);
        }
        P.points.push_back(std::move(best));
    }
    std::sort(P.points.begin(), P.points.end());
    if (std::adjacent_find(P.points.begin(), P.points.end()) != P.points.end())
        throw std::logic_error("projective representatives collide");
    P.multiplicities.assign(P.points.size(), 1);
    return P;
}

HammingCode hamming_expansion(const RankCode& C, u64 budget) {
    QSystem X(C);
    if (X.dim() != C.n())
        throw std::invalid_argument("degenerate code: compress it first (compress_degenerate)");
    ProjectiveSystem P = projective_system(X, budget);
    Mat g(C.sup(), C.k(), P.points.size());
    for (std::size_t j = 0; j < P.points.size(); ++j)
        for (std::size_t i = 0; i < C.k(); ++i) g.at(i, j) = P.points[j][i];
    return HammingCode{std::move(g)};
}

WeightDistribution hamming_weight_distribution(const HammingCode& H, u64 budget,
                                               unsigned threads) {
    const FieldPtr& F = H.g.field;
    const u64 order = F->order();
    const u64 reps = projective_rep_count(order, H.k());
    if (reps > budget) throw BudgetExceeded("Hamming weight distribution", reps, budget);
    auto counts = detail::parallel_weight_counts(
        reps, threads, [&](u64 lo, u64 hi, std::map<std::size_t, u64>& out) {
            for (u64 i = lo; i < hi; ++i) {
                std::vector<u64> word = vec_mat(projective_rep_at(F, H.k(), i), H.g);
                std::size_t w = 0;
                for (u64 v : word) w += v != 0;
                out[w] += order - 1;
            }
        });
    WeightDistribution d;
    d.metric = WeightDistribution::Metric::Hamming;
    d.n = H.length();
    d.counts = std::move(counts);
    d.counts[0] += 1;
    return d;
}

bool verify_weight_correspondence(const RankCode& C, u64 budget) {
    HammingCode H = hamming_expansion(C, budget);
    const u64 qm = C.sup()->order(), q = C.q();
    const std::size_t n = C.n();
    const u64 reps = projective_rep_count(qm, C.k());
    if (reps > budget) throw BudgetExceeded("dual enumeration", reps, budget);
    for (u64 i = 0; i < reps; ++i) {
        std::vector<u64> x = projective_rep_at(C.sup(), C.k(), i);
        std::size_t t = C.rank_weight(C.codeword(x));
        std::vector<u64> word = vec_mat(x, H.g);
        std::size_t w = 0;
        for (u64 v : word) w += v != 0;
        u64 expected = (pow_checked(q, n, "weight map") - pow_checked(q, n - t, "weight map")) / (q - 1);
        if (w != expected) return false;
    }
    return true;
}

HammingTwoWeightReport analyze_hamming_two_weight(const HammingCode& H, u64 budget) {
    HammingTwoWeightReport rep;
    rep.dist = hamming_weight_distribution(H, budget);
    std::vector<std::size_t> sup = rep.dist.support();
    rep.w1 = sup.empty() ? 0 : sup.front();
    rep.w2 = sup.size() >= 2 ? sup[1] : 0;
    rep.two_weight = sup.size() == 2;
    rep.antipodal = rep.two_weight && rep.w2 == H.length();
    return rep;
}

HammingTwoWeightReport analyze_hamming_two_weight(const HammingCode& H, const RankCode& source,
                                                  u64 budget) {
    HammingTwoWeightReport rep = analyze_hamming_two_weight(H, budget);
    WeightDistribution rd = rank_weight_distribution(source, budget);
    const u64 q = source.q();
    const std::size_t n = source.n();
    std::map<std::size_t, u64> image;
    for (const auto& [t, c] : rd.counts) {
        u64 w = (pow_checked(q, n, "weight map") - pow_checked(q, n - t, "weight map")) / (q - 1);
        image[(std::size_t)w] += c;
    }
    if (image != rep.dist.counts)
        throw std::logic_error("expansion weights differ from the rank-weight image");
    return rep;
}

}  // namespace rmc
