#include "coklab/hall_littlewood.hpp"
#include "coklab/matrix_engine.hpp"
#include "coklab/montecarlo.hpp"
#include "coklab/pgroup.hpp"
#include "coklab/rng.hpp"

#include <benchmark/benchmark.h>

using namespace coklab;

namespace {

MatrixModPrimePower random_matrix(SplitMix64& rng, uint32_t n, uint64_t p, uint32_t level) {
    MatrixModPrimePower m = MatrixModPrimePower::zero(n, p, level);
    for (auto& e : m.entries) e = static_cast<uint32_t>(rng.below(m.modulus));
    return m;
}

void BM_snf_type(benchmark::State& state) {
    SplitMix64 rng(7);
    uint32_t n = static_cast<uint32_t>(state.range(0));
    MatrixModPrimePower m = random_matrix(rng, n, 2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(snf_type(m));
        m.entries[rng.below(m.entries.size())] = static_cast<uint32_t>(rng.below(4));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_snf_type)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_mat_mul_mod4(benchmark::State& state) {
    SplitMix64 rng(9);
    uint32_t n = static_cast<uint32_t>(state.range(0));
    MatrixModPrimePower a = random_matrix(rng, n, 2, 2);
    MatrixModPrimePower b = random_matrix(rng, n, 2, 2);
    for (auto _ : state) benchmark::DoNotOptimize(mat_mul(a, b));
    state.SetComplexityN(n);
}
BENCHMARK(BM_mat_mul_mod4)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_bit_rank(benchmark::State& state) {
    SplitMix64 rng(11);
    uint32_t n = static_cast<uint32_t>(state.range(0));
    BitMatrixF2 m = BitMatrixF2::zero(n);
    for (auto& w : m.rows) w = rng.next();
    for (auto _ : state) benchmark::DoNotOptimize(bit_rank(m));
}
BENCHMARK(BM_bit_rank)->Arg(64)->Arg(128);

void BM_sur_count(benchmark::State& state) {
    Partition la({4, 3, 2, 1}), mu({2, 1});
    for (auto _ : state) benchmark::DoNotOptimize(pgroup::sur_count(2, la, mu));
}
BENCHMARK(BM_sur_count);

void BM_hl_principal(benchmark::State& state) {
    Partition la({4, 3, 2, 1});
    Rational t(1, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(hl::principal(hl::Kind::Q, la, Partition{},
                                               hl::SpecDescriptor::geometric(0, 2), t, 1e-12));
}
BENCHMARK(BM_hl_principal);

void BM_simulate_corank(benchmark::State& state) {
    mc::SimConfig cfg;
    cfg.n = 64;
    cfg.k = 2;
    cfg.levels = {{2, 1}};
    cfg.samples = 1000;
    cfg.seed = 1;
    cfg.chunk_size = 256;
    cfg.mode = mc::Mode::Corank;
    cfg.entry = mc::EntryDistributionSpec::uniform(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::simulate_joint(cfg, 1));
        ++cfg.seed;
    }
    state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_simulate_corank)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
