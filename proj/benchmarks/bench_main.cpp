#include <benchmark/benchmark.h>

#include "cfmm/axioms.hpp"
#include "cfmm/divergence.hpp"
#include "cfmm/fees.hpp"
#include "cfmm/swap.hpp"

using namespace cfmm;

namespace {

const AmmModel& model_at(int i) {
    static const std::vector<AmmModel> models = [] {
        auto v = real_world_catalog();
        v.push_back(default_sdamm());
        return v;
    }();
    return models.at(static_cast<std::size_t>(i));
}

void BM_SwapY(benchmark::State& st) {
    const AmmModel& m = model_at(static_cast<int>(st.range(0)));
    st.SetLabel(m.label());
    const Reserves r{100.0, 7.0};
    for (auto _ : st) benchmark::DoNotOptimize(swap_y(m, 10.0, r).output_amount);
}
BENCHMARK(BM_SwapY)->DenseRange(0, 8);

void BM_CurveInvariant(benchmark::State& st) {
    double x = 1.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(curve_invariant(x, 3.0, 50.0));
        x = x < 1e3 ? x * 1.01 : 1.0;
    }
}
BENCHMARK(BM_CurveInvariant);

void BM_FeeOde(benchmark::State& st) {
    const AmmModel& m = model_at(static_cast<int>(st.range(0)));
    st.SetLabel(m.label());
    const Reserves r{1.0, 1.0};
    for (auto _ : st) benchmark::DoNotOptimize(swap_y_fee(m, FeeLevel(0.01), 0.5, r).output);
}
BENCHMARK(BM_FeeOde)->Arg(0)->Arg(6)->Arg(8);

void BM_CheckAll(benchmark::State& st) {
    const AmmModel& m = model_at(static_cast<int>(st.range(0)));
    st.SetLabel(m.label());
    for (auto _ : st) benchmark::DoNotOptimize(check_all(m).verdicts.size());
}
BENCHMARK(BM_CheckAll)->Arg(0)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_GainInterval(benchmark::State& st) {
    const auto s = DivergenceSetup::pool_a(default_sdamm(), FeeLevel(0.0), {10.0, 1.0}, 1.0);
    for (auto _ : st) benchmark::DoNotOptimize(gain_interval(s));
}
BENCHMARK(BM_GainInterval)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
