#include <benchmark/benchmark.h>

#include <cmath>

#include "tmsort/analysis.hpp"
#include "tmsort/fieldgrid.hpp"
#include "tmsort/hgmodes.hpp"
#include "tmsort/raymatrix.hpp"
#include "tmsort/sorter.hpp"
#include "tmsort/spdc.hpp"

using namespace tmsort;

namespace {

void BM_Lct(benchmark::State& st, LctMethod method) {
    const auto n = static_cast<std::size_t>(st.range(0));
    auto g = standard_grid(1.0, 4, n);
    auto e = sample(HGMode{3, 1.0, 0.0}, g);
    auto T = frft_matrix(-0.7, 1.0);
    for (auto _ : st) benchmark::DoNotOptimize(apply_lct(e, T, {method}));
    st.SetComplexityN(st.range(0));
}

void BM_LctQuadrature(benchmark::State& st) { BM_Lct(st, LctMethod::Quadrature); }
void BM_LctChirp(benchmark::State& st) { BM_Lct(st, LctMethod::Chirp); }

void BM_JtaSvd(benchmark::State& st) {
    auto p = SPDCParams::symmetric_gvm(2.95, 24.0);
    auto J = jta_gauss(p, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(schmidt_numeric(J, 4));
}

void BM_Mod4(benchmark::State& st) {
    auto p = SPDCParams::symmetric_gvm(2.95, 24.0);
    double tau = 0.93 * std::sqrt(2.95 * 24.0);
    auto J = jta_exact_centered(p, povm_grid(tau, 2.95, 24.0, static_cast<std::size_t>(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(mod4_probs(J, tau));
}

void BM_Cascade(benchmark::State& st) {
    auto spec = SorterSpec::standard(static_cast<int>(st.range(0)), 1.0);
    for (auto _ : st) benchmark::DoNotOptimize(run_cascade(1, spec));
}

}  // namespace

BENCHMARK(BM_LctQuadrature)->RangeMultiplier(2)->Range(512, 4096)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LctChirp)->RangeMultiplier(2)->Range(512, 16384)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JtaSvd)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mod4)->Arg(192)->Arg(384)->Arg(768)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cascade)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
