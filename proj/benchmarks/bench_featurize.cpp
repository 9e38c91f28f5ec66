#include <benchmark/benchmark.h>

#include "vsd/corpus.hpp"
#include "vsd/featurize.hpp"
#include "vsd/textprep.hpp"

namespace {

const vsd::Corpus& corpus() {
  static const vsd::Corpus c = vsd::load_corpus(VSD_FIXTURE_DIR "/corpus.tsv");
  return c;
}

void BM_Preprocess(benchmark::State& state) {
  const auto stops = vsd::StopList::defaults();
  const auto rules = vsd::StemRules::defaults();
  for (auto _ : state) {
    for (const auto& s : corpus()) benchmark::DoNotOptimize(vsd::preprocess(s.text, stops, rules));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().size()));
}
BENCHMARK(BM_Preprocess);

void BM_BowVectors(benchmark::State& state) {
  const auto stops = vsd::StopList::defaults();
  const auto rules = vsd::StemRules::defaults();
  std::vector<std::vector<vsd::Token>> docs;
  for (const auto& s : corpus()) docs.push_back(vsd::preprocess(s.text, stops, rules));
  const auto vocab = vsd::build_vocabulary(docs, 1000);
  const auto mode = static_cast<vsd::BowMode>(state.range(0));
  for (auto _ : state) {
    for (const auto& d : docs) benchmark::DoNotOptimize(vsd::bow_vector(d, vocab, mode));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(docs.size()));
}
BENCHMARK(BM_BowVectors)->Arg(0)->Arg(2);

void BM_LoadEmbeddings(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(vsd::load_embeddings(VSD_FIXTURE_DIR "/toy_embeddings.txt"));
  }
}
BENCHMARK(BM_LoadEmbeddings);

}  // namespace
