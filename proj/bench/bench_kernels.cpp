// Serial reference vs. fast or parallel kernels.
#include "cubicprng/limb_orbit.hpp"
#include "cubicprng/orbit.hpp"
#include "cubicprng/seeds.hpp"
#include "cubicprng/stats.hpp"

#include <benchmark/benchmark.h>

using namespace cubicprng;

namespace {

const CoeffTriple& seed() {
    static const CoeffTriple t = validate_triple(0, 1, -1);
    return t;
}

void BM_GenerateReference(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_bits_reference(OrbitState(seed()), n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenerateLimb(benchmark::State& state) {
    GenerateOptions opts;
    opts.kernel = Kernel::Limb;
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_bits(seed(), n, opts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenerateBlock(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_bits(seed(), n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SeedSetBits(benchmark::State& state) {
    const auto set = build_seed_set(0, 64);
    const auto exec = state.range(0) ? Execution::Parallel : Execution::Serial;
    for (auto _ : state) benchmark::DoNotOptimize(generate_seed_set_bits(set, 8192, 32, exec));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_GapReport(benchmark::State& state) {
    const auto set = build_seed_set(0, 1001);
    const auto exec = state.range(0) ? Execution::Parallel : Execution::Serial;
    for (auto _ : state) benchmark::DoNotOptimize(gap_report(set, 64, exec));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_Suite(benchmark::State& state) {
    static const BitStream bits = generate_bits(seed(), 1 << 20).bits;
    const auto exec = state.range(0) ? Execution::Parallel : Execution::Serial;
    for (auto _ : state) benchmark::DoNotOptimize(stats::run_suite(bits, 0.01, exec));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_GenerateReference)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateLimb)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateBlock)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedSetBits)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapReport)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
