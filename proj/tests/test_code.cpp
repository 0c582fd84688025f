#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rmc/atw.hpp"
#include "rmc/code.hpp"

using namespace rmc;

namespace {

RankCode make_code(u64 q, unsigned m, const std::vector<std::vector<u64>>& rows) {
    auto [p, e] = prime_power_decompose(q);
    FieldPtr sub = Field::canonical(p, e);
    FieldPtr sup = Field::canonical(p, e * m);
    return RankCode::from_generator(Mat::from_rows(sup, rows), Embedding::build(sub, sup));
}

// Scale every entry of G by alpha, multiply by the lifted column transform,
// and compare row spaces: the witness contract of codes_equivalent.
bool witness_ok(const RankCode& C1, const RankCode& C2, const EquivalenceResult& r) {
    Mat G2M = mul_lifted(C2.generator(), r.M, C2.base());
    const Field& F = *C1.sup();
    for (auto& e : G2M.a) e = F.mul(r.alpha, e);
    return rref(G2M).m == rref(C1.generator()).m;
}

}  // namespace

TEST_CASE("prime power decomposition") {
    CHECK(prime_power_decompose(2) == std::pair<u64, unsigned>{2, 1});
    CHECK(prime_power_decompose(8) == std::pair<u64, unsigned>{2, 3});
    CHECK(prime_power_decompose(81) == std::pair<u64, unsigned>{3, 4});
    CHECK(prime_power_decompose(125) == std::pair<u64, unsigned>{5, 3});
    CHECK_THROWS_AS(prime_power_decompose(6), std::invalid_argument);
    CHECK_THROWS_AS(prime_power_decompose(1), std::invalid_argument);
    CHECK_THROWS_AS(prime_power_decompose(0), std::invalid_argument);
    CHECK(canonical_field_of_order(9)->spec() == "3^2:10");
}

TEST_CASE("projective representatives") {
    CHECK(projective_rep_count(2, 3) == 7);
    CHECK(projective_rep_count(16, 2) == 17);
    CHECK(projective_rep_count(8, 3) == 73);
    CHECK(projective_rep_count(3, 2) == 4);

    FieldPtr f = Field::canonical(2, 2);
    // all reps are distinct, lead with 1, and appear in increasing key order
    u64 count = projective_rep_count(4, 2);
    REQUIRE(count == 5);
    std::set<std::vector<u64>> seen;
    u64 prev_key = 0;
    for (u64 i = 0; i < count; ++i) {
        auto v = projective_rep_at(f, 2, i);
        REQUIRE(v.size() == 2);
        std::size_t lead = 0;
        while (lead < v.size() && v[lead] == 0) ++lead;
        REQUIRE(lead < v.size());
        CHECK(v[lead] == 1);
        u64 key = v[0] * 4 + v[1];
        if (i > 0) CHECK(key > prev_key);
        prev_key = key;
        seen.insert(v);
    }
    CHECK(seen.size() == count);
    CHECK(projective_rep_at(f, 2, 0) == std::vector<u64>{0, 1});
    // every nonzero vector is a scalar multiple of exactly one rep
    FieldPtr f16 = Field::canonical(2, 4);
    std::set<std::vector<u64>> all;
    for (u64 i = 0; i < projective_rep_count(16, 2); ++i) {
        auto v = projective_rep_at(f16, 2, i);
        for (u64 a = 1; a < 16; ++a) all.insert({f16->mul(a, v[0]), f16->mul(a, v[1])});
    }
    CHECK(all.size() == 255);
}

TEST_CASE("from_generator validation") {
    FieldPtr f16 = Field::canonical(2, 4);
    FieldPtr f2 = Field::canonical(2, 1);
    Embedding e = Embedding::build(f2, f16);
    CHECK_THROWS_AS(
        RankCode::from_generator(Mat::from_rows(f16, {{1, 2}, {2, 4}}), e),  // row2 = 2*row1
        std::invalid_argument);
    CHECK_THROWS_AS(
        RankCode::from_generator(Mat::from_rows(f16, {{1}, {2}}), e),  // k > n
        std::invalid_argument);
    CHECK_THROWS_AS(
        RankCode::from_generator(Mat::from_rows(f2, {{1, 0}}), e),  // wrong field
        std::invalid_argument);
}

TEST_CASE("both weight-distribution routes agree on the two-block code") {
    RankCode C = two_block_atw(2, 2, 4);
    WeightDistribution a = rank_weight_distribution(C);
    WeightDistribution b = hyperplane_weight_distribution(C);
    CHECK(a == b);
    CHECK(a.counts == std::map<std::size_t, u64>{{0, 1}, {2, 75}, {4, 180}});
    CHECK(a.total() == 256);
    CHECK(a.min_distance() == 2);
    CHECK(a.support() == std::vector<std::size_t>{2, 4});
    // thread count does not change the result
    CHECK(rank_weight_distribution(C, kDefaultBudget, 4) == a);
    // budget enforcement: 17 representatives needed
    CHECK_THROWS_AS(rank_weight_distribution(C, 5), BudgetExceeded);
}

TEST_CASE("hyperplane route requires dimension two") {
    RankCode C = hadamard_code(2, 2, 3);
    CHECK_THROWS_AS(hyperplane_weight_distribution(C), std::invalid_argument);
}

TEST_CASE("scalar-orbit divisibility of weight counts") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        unsigned m = 2 + rng() % 3;
        u64 qm = u64(1) << m;
        FieldPtr sup = Field::canonical(2, m);
        unsigned n = 2 + rng() % 3;
        Mat G(sup, 2, n);
        do {
            for (auto& e : G.a) e = rng() % qm;
        } while (mat_rank(G) < 2);
        RankCode C = RankCode::from_generator(G, Embedding::build(Field::canonical(2, 1), sup));
        WeightDistribution d = rank_weight_distribution(C);
        for (const auto& [w, c] : d.counts) {
            if (w == 0) {
                CHECK(c == 1);
            } else {
                CHECK(c % (qm - 1) == 0);
            }
        }
        CHECK(d.total() == qm * qm);
    }
}

TEST_CASE("gabidulin codes are MRD") {
    for (auto [q, m, l, k] :
         {std::tuple<u64, unsigned, unsigned, unsigned>{2, 4, 4, 2}, {2, 4, 3, 2}, {2, 5, 4, 3}, {3, 3, 3, 2}, {4, 3, 3, 2}}) {
        auto [p, e] = prime_power_decompose(q);
        Embedding emb = Embedding::build(Field::canonical(p, e), Field::canonical(p, e * m));
        RankCode C = gabidulin(emb, l, k);
        CHECK(C.n() == l);
        CHECK(C.k() == k);
        CHECK(is_mrd(C));
        CHECK(min_distance(C) == l - k + 1);
    }
    // support of the [4, 2] code over F_16: exactly the top two weights
    Embedding emb = Embedding::build(Field::canonical(2, 1), Field::canonical(2, 4));
    RankCode C = gabidulin(emb, 4, 2);
    CHECK(rank_weight_distribution(C).support() == std::vector<std::size_t>{3, 4});

    // custom evaluation points must be independent over the subfield
    CHECK_THROWS_AS(gabidulin(emb, 2, 2, std::vector<u64>{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(gabidulin(emb, 5, 2), std::invalid_argument);  // l > m
    CHECK_THROWS_AS(gabidulin(emb, 2, 3), std::invalid_argument);  // k > l
    // explicit evaluation points reproduce the default
    RankCode C2 = gabidulin(emb, 4, 2, std::vector<u64>{1, 2, 4, 8});
    CHECK(C2.generator() == C.generator());
}

TEST_CASE("mrd detection rejects and accepts correctly") {
    // [3, 2] with a rank-1 codeword: second row (0,1,1) has weight 1 < 2
    RankCode notmrd = make_code(2, 3, {{1, 0, 0}, {0, 1, 1}});
    CHECK_FALSE(is_mrd(notmrd));
    // length beyond the extension degree violates the precondition
    RankCode wide = hadamard_code(2, 2, 2);
    CHECK_THROWS_AS(is_mrd(wide), std::invalid_argument);
}

TEST_CASE("hadamard code and constant-weight classification") {
    RankCode H = hadamard_code(2, 2, 2);
    CHECK(H.n() == 4);
    CHECK(H.k() == 2);
    WeightDistribution d = rank_weight_distribution(H);
    CHECK(d.counts == std::map<std::size_t, u64>{{0, 1}, {2, 15}});
    ConstantWeightClass c = classify_constant_weight(H);
    CHECK(c.kind == ConstantWeightKind::Hadamard);
    CHECK(c.d == 2);

    ConstantWeightClass c32 = classify_constant_weight(hadamard_code(2, 3, 2));
    CHECK(c32.kind == ConstantWeightKind::Hadamard);
    CHECK(c32.d == 3);
    ConstantWeightClass c33 = classify_constant_weight(hadamard_code(3, 2, 2));
    CHECK(c33.kind == ConstantWeightKind::Hadamard);
    CHECK(c33.d == 2);

    // one-dimensional codes are constant weight but not Hadamard
    RankCode one = make_code(2, 2, {{1, 2}});
    ConstantWeightClass c1 = classify_constant_weight(one);
    CHECK(c1.kind == ConstantWeightKind::DimOne);
    CHECK(c1.d == 2);

    // a two-weight code is not constant weight
    CHECK(classify_constant_weight(two_block_atw(2, 2, 4)).kind ==
          ConstantWeightKind::NotConstant);
}

TEST_CASE("q-system and degeneracy") {
    RankCode C = two_block_atw(2, 2, 4);
    QSystem X(C);
    CHECK(X.dim() == 4);
    CHECK(X.ambient_dim() == 8);
    CHECK(C.is_nondegenerate());
    for (const auto& col : X.columns()) CHECK(X.contains(col));

    // degenerate: third column is the sum of the first two
    RankCode D = make_code(2, 4, {{1, 0, 1, 0}, {0, 1, 1, 0}});
    CHECK_FALSE(D.is_nondegenerate());
    auto [Dc, M] = D.compress_degenerate();
    CHECK(Dc.n() == 2);
    CHECK(Dc.is_nondegenerate());
    CHECK(mat_rank(M) == 4);
    // weights survive compression
    WeightDistribution before = rank_weight_distribution(D);
    WeightDistribution after = rank_weight_distribution(Dc);
    CHECK(before.counts == after.counts);
    // compressing a non-degenerate code is the identity on length
    auto [Cc, M2] = C.compress_degenerate();
    CHECK(Cc.n() == C.n());
}

TEST_CASE("covector matrix kernels measure codeword corank") {
    RankCode C = two_block_atw(2, 2, 4);
    for (u64 i = 0; i < projective_rep_count(16, 2); ++i) {
        std::vector<u64> x = projective_rep_at(C.sup(), 2, i);
        Mat cm = covector_matrix(C, x);
        CHECK(cm.rows == 4);
        CHECK(cm.cols == 4);
        // rank + kernel dimension identity ties the two hyperplane routes
        std::vector<u64> cw = C.codeword(x);
        CHECK(C.rank_weight(cw) == C.n() - kernel(cm).dim());
    }
}

TEST_CASE("GL order and enumeration") {
    CHECK(gl_order(2, 1) == 1);
    CHECK(gl_order(2, 2) == 6);
    CHECK(gl_order(2, 3) == 168);
    CHECK(gl_order(3, 2) == 48);
    CHECK(gl_order(2, 4) == 20160);

    for (auto [q, n] : {std::pair<u64, unsigned>{2, 2}, {2, 3}, {3, 2}}) {
        FieldPtr f = Field::canonical(q, 1);
        GLEnumerator en(f, n);
        Mat M;
        std::set<std::vector<u64>> seen;
        u64 cnt = 0;
        while (en.next(M)) {
            CHECK(mat_rank(M) == n);
            seen.insert(M.a);
            ++cnt;
        }
        CHECK(cnt == gl_order(q, n));
        CHECK(seen.size() == cnt);
    }
    // first element for GL(2, 2): rows are the smallest independent keys
    GLEnumerator en(Field::canonical(2, 1), 2);
    Mat M;
    REQUIRE(en.next(M));
    CHECK(M == Mat::from_rows(Field::canonical(2, 1), {{0, 1}, {1, 0}}));
}

TEST_CASE("code equivalence") {
    RankCode C = two_block_atw(2, 2, 4);

    SUBCASE("self equivalence") {
        EquivalenceResult r = codes_equivalent(C, C);
        REQUIRE(r.status == EquivalenceResult::Status::Yes);
        CHECK(witness_ok(C, C, r));
    }

    SUBCASE("column permutation is an equivalence") {
        Mat G = C.generator();
        Mat Gp(C.sup(), 2, 4);
        const std::size_t perm[4] = {2, 3, 0, 1};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) Gp.at(i, j) = G.at(i, perm[j]);
        RankCode Cp = RankCode::from_generator(Gp, C.base());
        EquivalenceResult r = codes_equivalent(C, Cp);
        REQUIRE(r.status == EquivalenceResult::Status::Yes);
        CHECK(witness_ok(C, Cp, r));
    }

    SUBCASE("row mixing over the extension field is an equivalence") {
        Mat G = C.generator();
        const Field& F = *C.sup();
        Mat Gm(C.sup(), 2, 4);
        for (std::size_t j = 0; j < 4; ++j) {
            Gm.at(0, j) = F.add(G.at(0, j), F.mul(9, G.at(1, j)));
            Gm.at(1, j) = G.at(1, j);
        }
        RankCode Cm = RankCode::from_generator(Gm, C.base());
        EquivalenceResult r = codes_equivalent(C, Cm);
        REQUIRE(r.status == EquivalenceResult::Status::Yes);
        CHECK(witness_ok(C, Cm, r));
    }

    SUBCASE("different weight distributions are inequivalent") {
        Embedding emb = Embedding::build(Field::canonical(2, 1), Field::canonical(2, 4));
        RankCode G43 = gabidulin(emb, 4, 2);
        EquivalenceResult r = codes_equivalent(C, G43);
        CHECK(r.status == EquivalenceResult::Status::No);
    }

    SUBCASE("budget cutoff") {
        EquivalenceResult r = codes_equivalent(C, C, 10);
        CHECK(r.status == EquivalenceResult::Status::Budget);
    }

    SUBCASE("shape mismatch") {
        RankCode small = make_code(2, 4, {{1, 0}, {0, 1}});
        CHECK_THROWS_AS(codes_equivalent(C, small), std::invalid_argument);
    }
}
