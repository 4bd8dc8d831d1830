// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "weyl/boundary.hpp"
#include "weyl/glattice.hpp"

using namespace weyl;

namespace {

void BM_Enumerate(benchmark::State& state, Exec exec) {
  const auto h = state.range(0);
  for (auto _ : state) {
    auto v = exec == Exec::Serial ? enumerate_box_serial(2, h) : enumerate_box_parallel(2, h);
    benchmark::DoNotOptimize(v.data());
  }
}

// Boundary fixing test over the whole lattice, the inner loop of every
// classifier rule.
void BM_FilterFixes(benchmark::State& state, Exec exec) {
  const auto lat = lattice_for(LatticeSpec(QuadField(2), state.range(0)));
  const FBoundaryPoint zero{BPoint::finite(0.0), BPoint::finite(0.0)};
  for (auto _ : state) {
    auto hits = filter_indices(
        lat->size(), [&](std::size_t i) { return fixes((*lat)[i].g, zero); }, exec);
    benchmark::DoNotOptimize(hits.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lat->size()));
}

void BM_ArgminDistance(benchmark::State& state, Exec exec) {
  const auto lat = lattice_for(LatticeSpec(QuadField(2), state.range(0)));
  const Mobius target(1.3, 0.4, -0.2, 0.7);
  for (auto _ : state) {
    auto best = argmin(
        lat->size(), [&](std::size_t i) { return psl_distance((*lat)[i].g.first(), target); }, exec);
    benchmark::DoNotOptimize(best);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lat->size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Enumerate, serial, Exec::Serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Enumerate, parallel, Exec::Parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FilterFixes, serial, Exec::Serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FilterFixes, parallel, Exec::Parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ArgminDistance, serial, Exec::Serial)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_ArgminDistance, parallel, Exec::Parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
