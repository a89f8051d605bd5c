#include <benchmark/benchmark.h>

#include "l1inf/bench.hpp"
#include "l1inf/projection.hpp"

namespace {

// Args: side length, radius in thousandths, algorithm index.
void BM_Project(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const double radius = static_cast<double>(state.range(1)) / 1000.0;
  const auto algo = l1inf::kAllAlgorithms[static_cast<std::size_t>(state.range(2))];
  const l1inf::DenseMatrix y = l1inf::gen_uniform_matrix(side, side, 1);
  std::size_t J = 0;
  for (auto _ : state) {
    auto out = l1inf::project_ball_l1inf(y, radius, algo);
    J = out.stats.J;
    benchmark::DoNotOptimize(out.X.values().data());
  }
  state.SetLabel(std::string(l1inf::to_string(algo)));
  state.counters["J_fraction"] = static_cast<double>(J) / static_cast<double>(y.size());
}

BENCHMARK(BM_Project)
    ->ArgsProduct({{250, 1000}, {10, 1000, 8000}, {0, 1, 2}})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
