#include <benchmark/benchmark.h>

#include <random>

#include "rmc/atw.hpp"
#include "rmc/code.hpp"
#include "rmc/linalg.hpp"
#include "rmc/search.hpp"

using namespace rmc;

static void BM_field_mul_table(benchmark::State& state) {
    FieldPtr f = Field::canonical(2, 8);
    std::mt19937_64 rng(7);
    std::vector<u64> xs(1024);
    for (auto& x : xs) x = rng() % f->order();
    std::size_t i = 0;
    for (auto _ : state) {
        u64 a = xs[i & 1023], b = xs[(i + 1) & 1023];
        benchmark::DoNotOptimize(f->mul(a, b));
        ++i;
    }
}
BENCHMARK(BM_field_mul_table);

static void BM_field_mul_polynomial(benchmark::State& state) {
    FieldPtr f = Field::canonical(2, 17);  // past the table threshold
    std::mt19937_64 rng(7);
    std::vector<u64> xs(1024);
    for (auto& x : xs) x = rng() % f->order();
    std::size_t i = 0;
    for (auto _ : state) {
        u64 a = xs[i & 1023], b = xs[(i + 1) & 1023];
        benchmark::DoNotOptimize(f->mul(a, b));
        ++i;
    }
}
BENCHMARK(BM_field_mul_polynomial);

static void BM_rref(benchmark::State& state) {
    FieldPtr f = Field::canonical(2, 4);
    std::mt19937_64 rng(11);
    Mat M(f, 16, 32);
    for (auto& e : M.a) e = rng() % f->order();
    for (auto _ : state) benchmark::DoNotOptimize(rref(M).rank);
}
BENCHMARK(BM_rref);

static void BM_rank_distribution(benchmark::State& state) {
    RankCode C = two_block_atw(2, 2, 4);
    for (auto _ : state) benchmark::DoNotOptimize(rank_weight_distribution(C).total());
}
BENCHMARK(BM_rank_distribution);

static void BM_subspace_unranking(benchmark::State& state) {
    SubspaceEnumerator en(Field::canonical(2, 1), 8, 4);
    u64 i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(en.at(i % en.count()).dim());
        ++i;
    }
}
BENCHMARK(BM_subspace_unranking);

static void BM_search_exhaustive(benchmark::State& state) {
    SearchJob job;
    job.q = 2;
    job.m = 2;
    job.n = 3;
    job.k = 2;
    for (auto _ : state) benchmark::DoNotOptimize(search_codes(job).examined);
}
BENCHMARK(BM_search_exhaustive);

BENCHMARK_MAIN();
