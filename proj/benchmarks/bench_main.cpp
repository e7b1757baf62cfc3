// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include <benchmark/benchmark.h>

#include "ristwin/farfield.hpp"
#include "ristwin/link/link.hpp"
#include "ristwin/synthesis.hpp"

using namespace ris;

static void BM_RadiateHemisphere(benchmark::State& state) {
    const SurfaceLayout l;
    const Codeword cw = synthesize_pencil(l, {20.0, 45.0}, ElementModelKind::Measured);
    const double step = 1.0 / static_cast<double>(state.range(0));
    const AngleGrid grid = AngleGrid::hemisphere(step, step);
    for (auto _ : state) {
        auto p = radiate(l, cw, l.design_frequency, grid, ElementModelKind::Measured);
        benchmark::DoNotOptimize(p.field.data());
    }
    state.counters["points"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_RadiateHemisphere)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Directivity(benchmark::State& state) {
    const SurfaceLayout l;
    const Codeword cw = synthesize_pencil(l, {0.0, 0.0}, ElementModelKind::Measured);
    const auto p = radiate(l, cw, l.design_frequency, AngleGrid::hemisphere(0.5, 0.5), ElementModelKind::Measured);
    for (auto _ : state) benchmark::DoNotOptimize(directivity(p).dbi);
}
BENCHMARK(BM_Directivity)->Unit(benchmark::kMillisecond);

static void BM_PencilSynthesis(benchmark::State& state) {
    const SurfaceLayout l;
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_pencil(l, {30.0, 10.0}, ElementModelKind::Measured));
}
BENCHMARK(BM_PencilSynthesis)->Unit(benchmark::kMicrosecond);

static void BM_RunLink(benchmark::State& state) {
    link::LinkConfig cfg;
    cfg.modulation = static_cast<link::Modulation>(state.range(0));
    const auto payload = link::random_payload(50000, 1);
    for (auto _ : state) benchmark::DoNotOptimize(link::run_link(cfg, payload).coded_ber);
    state.SetItemsProcessed(state.iterations() * static_cast<long>(payload.size()));
}
BENCHMARK(BM_RunLink)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_BiasFrameRoundTrip(benchmark::State& state) {
    const SurfaceLayout l;
    const Codeword cw = synthesize_pencil(l, {10.0, 0.0}, ElementModelKind::Measured);
    for (auto _ : state) benchmark::DoNotOptimize(decode_bias_frame(encode_bias_frame(cw), l));
}
BENCHMARK(BM_BiasFrameRoundTrip);
BENCHMARK_MAIN();
