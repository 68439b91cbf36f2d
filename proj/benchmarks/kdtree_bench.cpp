#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pathcast/kdtree.hpp"

namespace {

using pathcast::KdTree;
using pathcast::PixelPoint;

std::vector<PixelPoint> uniform_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 2048.0);
  std::vector<PixelPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({coord(rng), coord(rng)});
  }
  return pts;
}

void BM_KdBuild(benchmark::State& state) {
  const auto points = uniform_points(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    KdTree tree(points);
    benchmark::DoNotOptimize(tree.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KdBuild)->Range(1 << 10, 1 << 17);

void BM_KdNearest(benchmark::State& state) {
  const auto points = uniform_points(static_cast<std::size_t>(state.range(0)), 2);
  const auto probes = uniform_points(1024, 3);
  const KdTree tree(points);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree.nearest(probes[i++ & 1023]).index);
  }
}
BENCHMARK(BM_KdNearest)->Range(1 << 10, 1 << 17);

void BM_LinearNearest(benchmark::State& state) {
  const auto points = uniform_points(static_cast<std::size_t>(state.range(0)), 2);
  const auto probes = uniform_points(1024, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    const PixelPoint q = probes[i++ & 1023];
    std::size_t best = 0;
    double best_d2 = pathcast::squared_distance(q, points[0]);
    for (std::size_t j = 1; j < points.size(); ++j) {
      const double d2 = pathcast::squared_distance(q, points[j]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = j;
      }
    }
    benchmark::DoNotOptimize(best);
  }
}
BENCHMARK(BM_LinearNearest)->Range(1 << 10, 1 << 17);

void BM_KdRadius(benchmark::State& state) {
  const auto points = uniform_points(static_cast<std::size_t>(state.range(0)), 4);
  const auto probes = uniform_points(1024, 5);
  const KdTree tree(points);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree.within_radius(probes[i++ & 1023], 30.0).size());
  }
}
BENCHMARK(BM_KdRadius)->Range(1 << 10, 1 << 17);

}  // namespace

BENCHMARK_MAIN();
