#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "vsd/jsgf.hpp"

namespace {

const vsd::jsgf::Grammar& grammar() {
  static const vsd::jsgf::Grammar g = [] {
    std::ifstream in(VSD_FIXTURE_DIR "/violent.gram");
    std::stringstream buf;
    buf << in.rdbuf();
    return vsd::jsgf::parse_grammar(buf.str());
  }();
  return g;
}

void BM_Enumerate(benchmark::State& state) {
  const auto limit = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vsd::jsgf::enumerate_phrases(grammar(), "threat", limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Enumerate)->Arg(1000)->Arg(6000);

void BM_Sample(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vsd::jsgf::sample_phrases(grammar(), "threat", 1000, 7));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Sample);

void BM_Parse(benchmark::State& state) {
  const auto source = vsd::jsgf::to_source(grammar());
  for (auto _ : state) benchmark::DoNotOptimize(vsd::jsgf::parse_grammar(source));
}
BENCHMARK(BM_Parse);

}  // namespace
