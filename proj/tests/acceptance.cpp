// Acceptance gate: eight checks covering the golden constructions, the
// count predictions, the spread correspondence, the enumeration searches,
// the Hamming expansion, and the cross-cutting algebra properties.  One
// line per check; the exit code is the number of failures.
#include <chrono>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "rmc/atw.hpp"
#include "rmc/code.hpp"
#include "rmc/hamming.hpp"
#include "rmc/search.hpp"
#include "rmc/spread.hpp"

using namespace rmc;

namespace {

std::vector<std::string> notes;

bool require(bool cond, const std::string& what) {
    if (!cond) notes.push_back(what);
    return cond;
}

// fold a subspace of F_q^{mk} back into the [n, k] code it indexes, exactly
// as the search enumeration does
RankCode fold_to_code(const Subspace& S, const Embedding& base, unsigned m, unsigned k) {
    Mat G(base.sup(), k, S.dim());
    for (std::size_t j = 0; j < S.dim(); ++j) {
        std::vector<u64> row = S.basis().row(j);
        for (unsigned c = 0; c < k; ++c)
            G.at(c, j) = base.from_coords(
                std::vector<u64>(row.begin() + c * m, row.begin() + (c + 1) * m));
    }
    return RankCode::from_generator(std::move(G), base);
}

// all F_p-combinations of a short list of field elements (p = 2 or 3 here)
std::set<u64> span_set(const Field& F, const std::vector<u64>& basis) {
    std::set<u64> out{0};
    for (u64 b : basis) {
        std::set<u64> next;
        for (u64 s : out)
            for (u64 c = 0, acc = 0; c < F.p(); ++c, acc = F.add(acc, b))
                next.insert(F.add(s, acc));
        out = std::move(next);
    }
    return out;
}

RankCode random_code(std::mt19937_64& rng, u64 p, unsigned m, unsigned n, unsigned k) {
    FieldPtr sup = Field::canonical(p, m);
    Embedding base = Embedding::build(Field::canonical(p, 1), sup);
    while (true) {
        Mat G(sup, k, n);
        for (auto& e : G.a) e = rng() % sup->order();
        if (mat_rank(G) < k) continue;
        RankCode C = RankCode::from_generator(std::move(G), base);
        if (C.is_nondegenerate()) return C;
    }
}

std::optional<SearchSummary> dim2_scan;  // shared between checks 6 and 8

// ---- check bodies ----

bool check1_counts_of_the_golden_code() {
    RankCode C = two_block_atw(2, 2, 4);
    AtwReport rep = analyze_atw(C);
    std::map<std::size_t, u64> want{{0, 1}, {2, 75}, {4, 180}};
    bool ok = require(rep.dist.counts == want, "measured counts");
    ok &= require(rep.antipodal && rep.two_weight && rep.d == 2 && rep.d2 == 4, "shape flags");
    ok &= require(rep.predicted == want, "predicted counts");
    // closed forms: A_d = (q^m-1)(q^n-1)/(q^{n-d}-1), A_n = (q^m-1)(q^m+1-N1)
    const u64 qm = 16, qn = 16, qnd = 4;
    const u64 n1 = (qn - 1) / (qnd - 1);
    ok &= require((qm - 1) * (qn - 1) / (qnd - 1) == 75, "A_d closed form");
    ok &= require((qm - 1) * (qm + 1 - n1) == 180, "A_n closed form");
    return ok;
}

bool check2_mrd_expansion() {
    Embedding mid = Embedding::build(Field::canonical(2, 2), Field::canonical(2, 6));
    RankCode mrd = gabidulin(mid, 3, 2);
    bool ok = require(is_mrd(mrd), "seed code is MRD");
    RankCode E = expand_mrd_to_atw(mrd, Field::canonical(2, 1));
    AtwReport rep = analyze_atw(E, kDefaultBudget, 4);
    ok &= require(E.n() == 6 && E.k() == 2, "expanded shape");
    ok &= require(rep.dist.counts == std::map<std::size_t, u64>{{0, 1}, {4, 1323}, {6, 2772}},
                  "expanded counts");
    ok &= require(rep.antipodal && rep.d == 4, "expanded antipodality");
    ok &= require(rep.predicted == rep.dist.counts, "expanded prediction");
    // codeword-by-codeword: rank t over F_4 becomes rank 2t over F_2
    u64 mismatches = 0;
    for (u64 x1 = 0; x1 < 64; ++x1)
        for (u64 x2 = 0; x2 < 64; ++x2) {
            std::vector<u64> msg{x1, x2};
            std::size_t t = rank_over_subfield(vec_mat(msg, mrd.generator()), mrd.base());
            std::size_t r = rank_over_subfield(vec_mat(msg, E.generator()), E.base());
            if (r != 2 * t) ++mismatches;
        }
    ok &= require(mismatches == 0, "rank doubling over all 4096 codewords");
    return ok;
}

bool check3_spread_extraction() {
    Spread S1 = spread_from_atw(two_block_atw(2, 2, 4));
    bool ok = require(S1.elements.size() == 5, "first spread size");
    ok &= require(verify_spread(S1).valid, "first spread axioms");
    std::vector<Subspace> b1 = direct_sum_split(S1);
    ok &= require(b1.size() == 2, "first spread split count");

    Embedding mid = Embedding::build(Field::canonical(2, 2), Field::canonical(2, 6));
    RankCode E = expand_mrd_to_atw(gabidulin(mid, 3, 2), Field::canonical(2, 1));
    Spread S2 = spread_from_atw(E);
    ok &= require(S2.elements.size() == 21, "second spread size");
    ok &= require(verify_spread(S2).valid, "second spread axioms");
    std::vector<Subspace> b2 = direct_sum_split(S2);
    ok &= require(b2.size() == 3, "second spread split count");

    for (const std::vector<Subspace>* blocks : {&b1, &b2}) {
        Subspace acc = Subspace::zero((*blocks)[0].field(), (*blocks)[0].ambient());
        for (const Subspace& b : *blocks) {
            ok &= require(intersect(acc, b).dim() == 0, "split blocks are complementary");
            acc = sum(acc, b);
        }
        ok &= require(acc.dim() == (*blocks)[0].ambient(), "split blocks sum to the space");
    }
    return ok;
}

bool check4_distribution_routes_agree() {
    std::mt19937_64 rng(20260823);
    unsigned done = 0, mismatched = 0;
    // 100 binary-base codes, then 50 ternary-base for good measure
    while (done < 150) {
        u64 p = done < 100 ? 2 : 3;
        unsigned m = 2 + rng() % 4;       // 2..5
        unsigned n = 2 + rng() % 4;       // 2..5
        if (n > 2 * m) continue;          // q-system must fit in F_q^{2m}
        RankCode C = random_code(rng, p, m, n, 2);
        if (rank_weight_distribution(C).counts != hyperplane_weight_distribution(C).counts)
            ++mismatched;
        ++done;
    }
    return require(mismatched == 0, "route disagreement on random [n, 2] codes");
}

bool check5_no_antipodal_in_dimension_three() {
    SearchJob job;
    job.q = 2;
    job.m = 3;
    job.n = 3;
    job.k = 3;
    job.atw_only = true;
    job.threads = 4;
    SearchSummary s = search_codes(job);
    bool ok = require(s.examined == 788035, "full enumeration of [9 3]_2 systems");
    ok &= require(s.findings.empty(), "no antipodal two-weight system of dimension 3");
    return ok;
}

bool check6_half_distance_classification() {
    SearchJob job;
    job.q = 2;
    job.m = 4;
    job.n = 4;
    job.k = 2;
    job.atw_only = true;
    job.threads = 4;
    SearchSummary s = search_codes(job);
    dim2_scan = s;

    FieldPtr f2 = Field::canonical(2, 1);
    FieldPtr f16 = Field::canonical(2, 4);
    Embedding base = Embedding::build(f2, f16);
    SubspaceEnumerator subs(f2, 8, 4);
    std::set<u64> f4_image;
    {
        Embedding quad = Embedding::build(Field::canonical(2, 2), f16);
        for (u64 a = 0; a < 4; ++a) f4_image.insert(quad.map(a));
    }

    std::set<std::size_t> seen_d;
    u64 half = 0, above = 0, misclassified = 0, bad_basis = 0;
    std::vector<RankCode> sample;
    for (const Finding& f : s.findings) {
        seen_d.insert(f.d);
        RankCode C = fold_to_code(subs.at(f.index), base, 4, 2);
        HalfClassification h = classify_half_distance(C);
        if (f.d == 2) {
            ++half;
            if (h.kind != HalfKind::Canonical) ++misclassified;
            else if (span_set(*f16, h.subfield_basis) != f4_image) ++bad_basis;
            if (sample.size() < 3) sample.push_back(std::move(C));
        } else {
            ++above;
            if (h.kind != HalfKind::NotATW) ++misclassified;
        }
    }
    bool ok = require(!s.findings.empty(), "antipodal systems found");
    ok &= require(seen_d == std::set<std::size_t>{2, 3}, "distances found are {2, 3}");
    ok &= require(half > 0 && above > 0, "both distance classes populated");
    ok &= require(misclassified == 0, "every finding classified by its distance");
    ok &= require(bad_basis == 0, "every half-distance basis spans the embedded quartic field");
    if (require(sample.size() == 3, "three half-distance codes to compare")) {
        for (std::size_t i = 0; i < sample.size(); ++i)
            for (std::size_t j = i + 1; j < sample.size(); ++j) {
                EquivalenceResult eq = codes_equivalent(sample[i], sample[j]);
                ok &= require(eq.status == EquivalenceResult::Status::Yes,
                              "half-distance codes are pairwise equivalent");
            }
    } else {
        ok = false;
    }
    return ok;
}

bool check7_hamming_expansion() {
    RankCode C = two_block_atw(2, 2, 4);
    HammingCode H = hamming_expansion(C);
    HammingTwoWeightReport rep = analyze_hamming_two_weight(H, C);
    bool ok = require(H.length() == 15 && H.k() == 2, "expanded shape [15, 2]");
    ok &= require(rep.dist.counts == std::map<std::size_t, u64>{{0, 1}, {12, 75}, {15, 180}},
                  "expanded counts");
    ok &= require(rep.two_weight && rep.antipodal && rep.w1 == 12 && rep.w2 == 15,
                  "two-weight antipodal image");
    ok &= require(rep.dist.min_distance() == 12, "minimum distance 12");

    Embedding mid = Embedding::build(Field::canonical(2, 2), Field::canonical(2, 6));
    std::vector<RankCode> corpus;
    corpus.push_back(two_block_atw(2, 2, 4));
    corpus.push_back(gabidulin(Embedding::build(Field::canonical(2, 1), Field::canonical(2, 4)), 4, 2));
    corpus.push_back(expand_mrd_to_atw(gabidulin(mid, 3, 2), Field::canonical(2, 1)));
    corpus.push_back(hadamard_code(2, 2, 2));
    corpus.push_back(hadamard_code(3, 2, 2));
    corpus.push_back(block_diagonal_two_weight(2, 1, 3));
    corpus.push_back(block_diagonal_two_weight(2, 2, 3));
    std::mt19937_64 rng(715);
    while (corpus.size() < 57) {  // 7 named + 50 random
        u64 p = (rng() % 2) ? 2 : 3;
        unsigned m = 2 + rng() % 3;  // 2..4
        unsigned n = 2 + rng() % 3;  // 2..4
        unsigned k = 1 + rng() % std::min(3u, n);
        if (n > m * k) continue;  // a nondegenerate system needs n <= mk
        corpus.push_back(random_code(rng, p, m, n, k));
    }
    u64 violations = 0;
    for (const RankCode& code : corpus)
        if (!verify_weight_correspondence(code)) ++violations;
    ok &= require(violations == 0, "weight correspondence on the corpus");
    return ok;
}

bool check8_property_suites() {
    bool ok = true;

    // field axioms for every prime-power order up to 256, every triple
    std::mt19937_64 rng(88);
    std::vector<FieldPtr> fields;
    for (u64 o = 2; o <= 256; ++o) {
        try {
            auto [p, e] = prime_power_decompose(o);
            fields.push_back(Field::canonical(p, e));
        } catch (const std::invalid_argument&) {
        }
    }
    ok &= require(fields.size() == 70, "70 prime-power orders up to 256");
    std::vector<u64> bad_per(fields.size(), 0);
    {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < 4; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < fields.size(); i += 4) {
                    const Field& F = *fields[i];
                    const u64 o = F.order();
                    u64 bad = 0;
                    for (u64 a = 0; a < o; ++a) {
                        if (F.add(a, 0) != a || F.mul(a, 1) != a) ++bad;
                        if (F.add(a, F.neg(a)) != 0) ++bad;
                        if (a != 0 && F.mul(a, F.inv(a)) != 1) ++bad;
                        for (u64 b = 0; b < o; ++b) {
                            if (F.add(a, b) != F.add(b, a)) ++bad;
                            if (F.mul(a, b) != F.mul(b, a)) ++bad;
                            for (u64 c = 0; c < o; ++c) {
                                if (F.add(F.add(a, b), c) != F.add(a, F.add(b, c))) ++bad;
                                if (F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c))) ++bad;
                                if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)))
                                    ++bad;
                            }
                        }
                    }
                    bad_per[i] = bad;
                }
            });
        for (std::thread& th : pool) th.join();
    }
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (bad_per[i])
            ok &= require(false, "field axioms violated at order " +
                                     std::to_string(fields[i]->order()));

    // embedding homomorphism grid
    for (auto [p, a, r] : std::vector<std::tuple<u64, unsigned, unsigned>>{
             {2, 1, 4}, {2, 2, 3}, {2, 3, 2}, {3, 1, 3}, {3, 2, 2}, {5, 1, 2}, {7, 1, 2}}) {
        Embedding emb = Embedding::build(Field::canonical(p, a), Field::canonical(p, a * r));
        const Field& sub = *emb.sub();
        const Field& sup = *emb.sup();
        u64 bad = 0;
        for (u64 x = 0; x < sub.order(); ++x)
            for (u64 y = 0; y < sub.order(); ++y) {
                if (emb.map(sub.add(x, y)) != sup.add(emb.map(x), emb.map(y))) ++bad;
                if (emb.map(sub.mul(x, y)) != sup.mul(emb.map(x), emb.map(y))) ++bad;
            }
        if (bad) ok &= require(false, "embedding homomorphism violated");
    }

    // modular identity for subspace dimensions
    {
        FieldPtr f2 = Field::canonical(2, 1);
        SubspaceEnumerator e1(f2, 6, 2), e2(f2, 6, 3);
        u64 bad = 0;
        for (unsigned i = 0; i < 200; ++i) {
            Subspace A = e1.at(rng() % e1.count());
            Subspace B = e2.at(rng() % e2.count());
            if (sum(A, B).dim() + intersect(A, B).dim() != A.dim() + B.dim()) ++bad;
        }
        ok &= require(bad == 0, "modular dimension identity");
    }

    // subspace counts match the Gaussian binomial
    for (auto [N, t, q, want] : std::vector<std::tuple<unsigned, unsigned, u64, u64>>{
             {4, 2, 2, 35}, {5, 2, 2, 155}, {4, 2, 3, 130}, {6, 3, 2, 1395}}) {
        auto [p, e] = prime_power_decompose(q);
        SubspaceEnumerator en(Field::canonical(p, e), N, t);
        if (en.count() != want || gaussian_binomial(q, N, t) != want)
            ok &= require(false, "subspace count mismatch");
    }

    // scalar classes make every nonzero rank count divisible by q^m - 1
    {
        u64 bad = 0;
        unsigned done = 0;
        while (done < 20) {
            u64 p = (rng() % 2) ? 2 : 3;
            unsigned m = 2 + rng() % 3;
            unsigned n = 2 + rng() % 3;
            unsigned k = 1 + rng() % std::min(3u, n);
            if (n > m * k) continue;
            ++done;
            RankCode C = random_code(rng, p, m, n, k);
            u64 orbit = 1;
            for (unsigned j = 0; j < m; ++j) orbit *= p;
            orbit -= 1;
            for (const auto& [w, c] : rank_weight_distribution(C).counts)
                if (w > 0 && c % orbit != 0) ++bad;
        }
        ok &= require(bad == 0, "scalar-orbit divisibility");
    }

    // structural invariants on every antipodal finding of the dimension-2 scan
    {
        if (!dim2_scan) {
            SearchJob job;
            job.q = 2;
            job.m = 4;
            job.n = 4;
            job.k = 2;
            job.atw_only = true;
            job.threads = 4;
            dim2_scan = search_codes(job);
        }
        u64 bad = 0;
        for (const Finding& f : dim2_scan->findings) {
            if (!f.atw) ++bad;
            if (2 * f.d < 4) ++bad;
            if ((4 - f.d) == 0 || 4 % (4 - f.d) != 0) ++bad;
            if (f.support != std::vector<std::size_t>{f.d, 4}) ++bad;
        }
        ok &= require(bad == 0, "antipodal finding invariants");
    }
    return ok;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        bool (*fn)();
    };
    const Entry entries[] = {
        {1, check1_counts_of_the_golden_code}, {2, check2_mrd_expansion},
        {3, check3_spread_extraction},         {4, check4_distribution_routes_agree},
        {5, check5_no_antipodal_in_dimension_three},
        {6, check6_half_distance_classification},
        {7, check7_hamming_expansion},         {8, check8_property_suites},
    };
    int failures = 0;
    for (const Entry& entry : entries) {
        notes.clear();
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = entry.fn();
        } catch (const std::exception& e) {
            notes.push_back(std::string("unexpected exception: ") + e.what());
            ok = false;
        }
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        std::cout << "ACCEPTANCE " << entry.id << (ok ? " PASS" : " FAIL") << std::endl;
        for (const std::string& n : notes) std::cout << "  detail: " << n << std::endl;
        std::cerr << "[check " << entry.id << ": " << elapsed.count() << " ms]\n";
        if (!ok) ++failures;
    }
    return failures;
}
