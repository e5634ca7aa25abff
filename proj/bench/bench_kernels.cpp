// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to the
// thread count of interest; the reference variants ignore it.
#include <benchmark/benchmark.h>

#include <vector>

#include "wsn/deployment.hpp"
#include "wsn/kernels.hpp"

namespace {

using namespace wsn;

const Environment& scene() {
  static const Environment env(10, 10, {0.5, 0.5},
                               {RectObstacle{2, 2, 2.6, 2.6}, RectObstacle{7, 3, 7.6, 3.6}, CircleObstacle{{5, 6}, 0.5},
                                RectObstacle{3, 7, 3.6, 7.6}},
                               0.05);
  return env;
}

std::vector<NodeState> nodes(int n) {
  Rng rng(42);
  std::vector<NodeState> out;
  while (static_cast<int>(out.size()) < n) {
    const Point p{rng.uniform(0, 10), rng.uniform(0, 10)};
    if (!scene().in_free_space(p)) continue;
    NodeState s;
    s.id = static_cast<int>(out.size()) + 1;
    s.position = p;
    s.sensing_radius = 1.0;
    s.comm_radius = 2.0;
    out.push_back(s);
  }
  return out;
}

PerceivedSets perceived(const std::vector<NodeState>& ns) {
  Snapshot snap{0, ns, AdjacencyMatrix(ns.size()), {}};
  SimConfig cfg;
  Rng rng(7);
  refresh_adjacency(snap, scene(), cfg, rng);
  return perceive_neighbors(snap, scene(), cfg, rng);
}

std::vector<double> trace(std::uint64_t seed, int len) {
  Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(len));
  for (double& x : v) x = rng.uniform();
  return v;
}

template <auto Kernel>
void coverage(benchmark::State& state) {
  const RegionGrid grid(scene(), 200, 200);
  const auto ns = nodes(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(grid, ns));
}

template <auto Kernel>
void cells(benchmark::State& state) {
  const auto ns = nodes(static_cast<int>(state.range(0)));
  const PerceivedSets p = perceived(ns);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(ns, p, scene(), 0.05, 0.05));
}

template <auto Kernel>
void correlation(benchmark::State& state) {
  const auto a = trace(1, static_cast<int>(state.range(0)));
  const auto b = trace(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b, 10, 1));
}

}  // namespace

BENCHMARK(coverage<wsn::reference::coverage_mask>)->Name("coverage_mask/serial")->Arg(10)->Arg(40);
BENCHMARK(coverage<wsn::kernels::coverage_mask>)->Name("coverage_mask/omp")->Arg(10)->Arg(40);
BENCHMARK(cells<wsn::reference::voronoi_cells>)->Name("voronoi_cells/serial")->Arg(10)->Arg(40);
BENCHMARK(cells<wsn::kernels::voronoi_cells>)->Name("voronoi_cells/omp")->Arg(10)->Arg(40);
BENCHMARK(correlation<wsn::reference::correlation_windows>)->Name("correlation_windows/serial")->Arg(300)->Arg(1200);
BENCHMARK(correlation<wsn::kernels::correlation_windows>)->Name("correlation_windows/omp")->Arg(300)->Arg(1200);

BENCHMARK_MAIN();
