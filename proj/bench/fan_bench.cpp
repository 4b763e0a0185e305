#include <numbers>

#include <benchmark/benchmark.h>

#include "contact_optics/checks.hpp"
#include "contact_optics/wavefront.hpp"

namespace co = contact_optics;
using co::Vec;

namespace {

co::Medium snell_medium() {
    return {co::Geometry{co::GeometryKind::Euclidean2}, 1.0, {co::Region{co::Slab{1, 1.0, 2.0}, 1.33}}};
}

co::Medium half_plane_medium() {
    return {co::Geometry{co::GeometryKind::HyperbolicHalfPlane}, 1.33,
            {co::Region{co::HalfSpace{Vec{0.0, -1.0}, -1.0}, 1.0}}};
}

co::Fan fan_of(std::size_t count, Vec source) {
    co::Fan fan;
    fan.source = std::move(source);
    fan.count = count;
    fan.angle_from = 0.0;
    fan.angle_to = 2.0 * std::numbers::pi;
    return fan;
}

const co::FanOptions kOptions{3.0, 1e-3, {1.0, 2.0, 3.0}, co::TirMode::Terminate};

void BM_SnellSerial(benchmark::State& state) {
    const auto m = snell_medium();
    const auto fan = fan_of(static_cast<std::size_t>(state.range(0)), Vec{0.0, 0.0});
    for (auto _ : state) benchmark::DoNotOptimize(co::propagate_fan_serial(m, fan, kOptions));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SnellParallel(benchmark::State& state) {
    const auto m = snell_medium();
    const auto fan = fan_of(static_cast<std::size_t>(state.range(0)), Vec{0.0, 0.0});
    for (auto _ : state) benchmark::DoNotOptimize(co::propagate_fan(m, fan, kOptions));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HalfPlaneSerial(benchmark::State& state) {
    const auto m = half_plane_medium();
    const auto fan = fan_of(static_cast<std::size_t>(state.range(0)), Vec{0.0, 1.5});
    for (auto _ : state) benchmark::DoNotOptimize(co::propagate_fan_serial(m, fan, kOptions));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HalfPlaneParallel(benchmark::State& state) {
    const auto m = half_plane_medium();
    const auto fan = fan_of(static_cast<std::size_t>(state.range(0)), Vec{0.0, 1.5});
    for (auto _ : state) benchmark::DoNotOptimize(co::propagate_fan(m, fan, kOptions));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ChecksSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(co::run_checks(0, static_cast<std::size_t>(state.range(0)), {0.0, 1}));
}

void BM_ChecksParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(co::run_checks(0, static_cast<std::size_t>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_SnellSerial)->Arg(36)->Arg(360)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SnellParallel)->Arg(36)->Arg(360)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HalfPlaneSerial)->Arg(36)->Arg(360)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HalfPlaneParallel)->Arg(36)->Arg(360)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChecksSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChecksParallel)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
