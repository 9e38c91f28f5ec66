#include <gtest/gtest.h>

#include <json.hpp>

#include <random>

#include "test_helpers.hpp"
#include "vsd/model_io.hpp"
#include "vsd/pipeline.hpp"

using namespace vsd;
using vsd::testing::error_code_of;
using vsd::testing::fixture;

namespace {

const TrainedModel& bow_model() {
  static const TrainedModel model = [] {
    auto cfg = PipelineConfig::bow_rbf();
    cfg.date = "2026-01-01";
    return fit_model(load_corpus(fixture("corpus.tsv")), cfg);
  }();
  return model;
}

const TrainedModel& embedding_model() {
  static const TrainedModel model = [] {
    auto cfg = PipelineConfig::embedding_poly(fixture("toy_embeddings.txt"));
    cfg.date = "2026-01-01";
    return fit_model(load_corpus(fixture("corpus.tsv")), cfg);
  }();
  return model;
}

std::vector<FeatureVector> random_vectors(std::size_t dim, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<FeatureVector> out(n, FeatureVector(dim));
  for (auto& v : out) {
    for (auto& x : v) x = u(gen);
  }
  return out;
}

}  // namespace

TEST(ModelIo, BowRoundTripIsExact) {
  const auto& m = bow_model();
  const auto text = serialize_model(m);
  const auto back = parse_model(text);
  EXPECT_EQ(back.svm, m.svm);
  EXPECT_EQ(back.stops, m.stops);
  EXPECT_EQ(back.stem_rules, m.stem_rules);
  EXPECT_EQ(back.metadata, m.metadata);
  ASSERT_TRUE(back.featurizer.bow());
  EXPECT_EQ(back.featurizer.bow()->vocab, m.featurizer.bow()->vocab);
  for (const auto& x : random_vectors(m.svm.feature_dim, 100, 1)) {
    EXPECT_EQ(decision_value(back.svm, x), decision_value(m.svm, x));
  }
  EXPECT_EQ(serialize_model(back), text);
}

TEST(ModelIo, EmbeddingRoundTripThroughFile) {
  vsd::testing::TempDir dir;
  const auto& m = embedding_model();
  save_model(m, dir / "m.json");
  const auto back = load_model(dir / "m.json");
  EXPECT_EQ(back.svm, m.svm);
  ASSERT_TRUE(back.featurizer.embedding());
  EXPECT_EQ(back.featurizer.embedding()->content_hash, m.featurizer.embedding()->content_hash);
  for (const auto& s : load_corpus(fixture("corpus.tsv"))) {
    EXPECT_EQ(classify(back, s.text).score, classify(m, s.text).score);
  }
}

TEST(ModelIo, TruncatedFileIsCorrupt) {
  vsd::testing::TempDir dir;
  const auto text = serialize_model(bow_model());
  for (std::size_t keep : {std::size_t{0}, std::size_t{1}, text.size() / 2, text.rfind('}')}) {
    vsd::testing::write_file(dir / "t.json", text.substr(0, keep));
    EXPECT_EQ(error_code_of([&] { load_model(dir / "t.json"); }), Errc::Corrupt) << keep;
  }
}

TEST(ModelIo, MissingFieldIsCorrupt) {
  auto j = nlohmann::json::parse(serialize_model(bow_model()));
  j.erase("bias");
  EXPECT_EQ(error_code_of([&] { parse_model(j.dump()); }), Errc::Corrupt);
}

TEST(ModelIo, VersionMismatch) {
  auto j = nlohmann::json::parse(serialize_model(bow_model()));
  j["format_version"] = kModelFormatVersion + 1;
  EXPECT_EQ(error_code_of([&] { parse_model(j.dump()); }), Errc::VersionMismatch);
}

TEST(ModelIo, MissingModelFileIsIo) {
  EXPECT_EQ(error_code_of([] { load_model("/nonexistent/model.json"); }), Errc::Io);
}

TEST(ModelIo, DifferentEmbeddingTableIsFeaturizerMismatch) {
  vsd::testing::TempDir dir;
  std::string row = "1 50\nfoo";
  for (int i = 0; i < 50; ++i) row += " 0.25";
  vsd::testing::write_file(dir / "other.txt", row + "\n");
  ModelLoadOptions opts;
  opts.embeddings_path = dir / "other.txt";
  const auto text = serialize_model(embedding_model());
  EXPECT_EQ(error_code_of([&] { parse_model(text, opts); }), Errc::FeaturizerMismatch);
}

TEST(ModelIo, EmbeddingModelLoadsWithoutTableForInspection) {
  ModelLoadOptions opts;
  opts.embeddings_path = "/nonexistent/vectors.txt";
  opts.load_embeddings = false;
  const auto m = parse_model(serialize_model(embedding_model()), opts);
  EXPECT_EQ(m.svm, embedding_model().svm);
}

TEST(ModelIo, BowFootprintUnderTenMegabytes) {
  EXPECT_LT(serialize_model(bow_model()).size(), 10u * 1000u * 1000u);
}

TEST(ModelIo, HexFormatting) {
  EXPECT_EQ(to_hex(0), "0000000000000000");
  EXPECT_EQ(to_hex(0xdeadbeefULL), "00000000deadbeef");
}
