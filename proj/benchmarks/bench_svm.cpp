#include <benchmark/benchmark.h>

#include <random>

#include "vsd/svm.hpp"

namespace {

void make_problem(std::size_t n, std::size_t dim, std::vector<vsd::FeatureVector>& x,
                  std::vector<int>& y) {
  std::mt19937_64 gen(42);
  std::normal_distribution<double> noise(0.0, 1.0);
  x.assign(n, vsd::FeatureVector(dim));
  y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = i % 3 == 0 ? 1 : -1;
    for (auto& v : x[i]) v = noise(gen) + 0.5 * y[i];
  }
}

void BM_TrainRbf(benchmark::State& state) {
  std::vector<vsd::FeatureVector> x;
  std::vector<int> y;
  make_problem(static_cast<std::size_t>(state.range(0)), 50, x, y);
  vsd::SvmConfig cfg;
  cfg.kernel = vsd::KernelSpec::rbf(0.1);
  cfg.cost = 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(vsd::train(x, y, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TrainRbf)->Arg(200)->Arg(400)->Arg(840)->Unit(benchmark::kMillisecond);

void BM_TrainPoly(benchmark::State& state) {
  std::vector<vsd::FeatureVector> x;
  std::vector<int> y;
  make_problem(static_cast<std::size_t>(state.range(0)), 50, x, y);
  vsd::SvmConfig cfg;
  cfg.kernel = vsd::KernelSpec::poly(4, 1.0 / 50.0, 1.0);
  cfg.cost = 50.0;
  for (auto _ : state) benchmark::DoNotOptimize(vsd::train(x, y, cfg));
}
BENCHMARK(BM_TrainPoly)->Arg(400)->Arg(1120)->Unit(benchmark::kMillisecond);

void BM_DecisionValue(benchmark::State& state) {
  std::vector<vsd::FeatureVector> x;
  std::vector<int> y;
  make_problem(840, 1000, x, y);
  vsd::SvmConfig cfg;
  cfg.kernel = vsd::KernelSpec::rbf(0.1);
  cfg.cost = 10.0;
  const auto model = vsd::train(x, y, cfg);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(vsd::decision_value(model, x[i++ % x.size()]));
}
BENCHMARK(BM_DecisionValue);

}  // namespace
