#include <benchmark/benchmark.h>

#include <random>

#include "abst/dedekind.hpp"
#include "abst/pbasis.hpp"
#include "abst/snf.hpp"
#include "support/data.hpp"
#include "support/oracles.hpp"

using namespace abst;

static void BM_BuchbergerRank8(benchmark::State& state) {
    Presentation pres = abst::testing::load("paper_sec4.json");
    auto bins = relations_to_binomials(pres);
    TermOrder order = TermOrder::identity(8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(buchberger_reduced(bins, order, {}));
    }
}
BENCHMARK(BM_BuchbergerRank8);

static void BM_PipelineTwoBlockCycle(benchmark::State& state) {
    Presentation pres = abst::testing::load("ex54.json");
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_structure(pres));
    }
}
BENCHMARK(BM_PipelineTwoBlockCycle);

static void BM_SmithNormalForm8x8(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> entry(-50, 50);
    IntMatrix a(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) a.at(i, j) = entry(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(smith_normal_form(a));
    }
}
BENCHMARK(BM_SmithNormalForm8x8);

static void BM_RandomInstance(benchmark::State& state) {
    std::mt19937_64 rng(11);
    Presentation pres = abst::testing::random_triangular_presentation(rng, 5, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_structure(pres));
    }
}
BENCHMARK(BM_RandomInstance);

static void BM_TypeFormula(benchmark::State& state) {
    ModuleSpec spec = abst::testing::load_spec("ex54_spec.json");
    for (auto _ : state) {
        benchmark::DoNotOptimize(type_via_formula(spec));
    }
}
BENCHMARK(BM_TypeFormula);

BENCHMARK_MAIN();
