#include <gtest/gtest.h>

#include <cstdlib>

#include "test_helpers.hpp"
#include "vsd/pipeline.hpp"

using namespace vsd;
using vsd::testing::fixture;

namespace {

const Corpus& fixture_corpus() {
  static const Corpus c = load_corpus(fixture("corpus.tsv"));
  return c;
}

}  // namespace

TEST(Pipeline, PresetsCarryReferenceParameters) {
  const auto m1 = PipelineConfig::bow_rbf();
  EXPECT_EQ(std::get<BowOptions>(m1.featurizer).mode, BowMode::Boolean);
  EXPECT_EQ(std::get<BowOptions>(m1.featurizer).max_terms, 1000u);
  EXPECT_EQ(m1.svm.kernel, KernelSpec::rbf(0.1));
  EXPECT_EQ(m1.svm.cost, 10.0);
  EXPECT_FALSE(m1.smote.has_value());

  const auto m2 = PipelineConfig::embedding_poly("vectors.txt");
  EXPECT_EQ(m2.svm.kernel.kind, KernelSpec::Kind::Poly);
  EXPECT_EQ(m2.svm.kernel.degree, 4);
  EXPECT_EQ(m2.svm.kernel.coef0, 1.0);
  EXPECT_EQ(m2.svm.cost, 50.0);
  EXPECT_TRUE(m2.smote.has_value());
}

TEST(Pipeline, TrainIsByteDeterministic) {
  auto cfg = PipelineConfig::embedding_poly(fixture("toy_embeddings.txt"));
  cfg.split.seed = 3;
  cfg.smote->seed = 3;
  cfg.date = "2026-01-01";
  const auto a = train_pipeline(fixture_corpus(), cfg);
  const auto b = train_pipeline(fixture_corpus(), cfg);
  EXPECT_EQ(serialize_model(a.model), serialize_model(b.model));
  EXPECT_EQ(render_json(a.report), render_json(b.report));
}

TEST(Pipeline, SmoteNeverTouchesTestPartition) {
  auto with = PipelineConfig::embedding_poly(fixture("toy_embeddings.txt"));
  with.date = "2026-01-01";
  auto without = with;
  without.smote.reset();
  const auto a = train_pipeline(fixture_corpus(), with);
  const auto b = train_pipeline(fixture_corpus(), without);
  EXPECT_EQ(a.split.test, b.split.test);
  EXPECT_EQ(a.report.matrix.total(), a.split.test.size());
  EXPECT_EQ(a.model.metadata.n_synthetic, 280u);
  EXPECT_EQ(b.model.metadata.n_synthetic, 0u);
  EXPECT_EQ(a.model.metadata.n_train, 840u);
}

TEST(Pipeline, AutoGammaIsInverseDimension) {
  auto cfg = PipelineConfig::embedding_poly(fixture("toy_embeddings.txt"));
  const auto m = fit_model(stratified_split(fixture_corpus(), cfg.split).train, cfg);
  EXPECT_EQ(m.svm.kernel.gamma, 1.0 / 50.0);
}

TEST(Pipeline, MetadataRecorded) {
  auto cfg = PipelineConfig::bow_rbf();
  cfg.split.seed = 12;
  cfg.date = "2030-02-03";
  const auto out = train_pipeline(fixture_corpus(), cfg);
  EXPECT_EQ(out.model.metadata.seed, 12u);
  EXPECT_EQ(out.model.metadata.date, "2030-02-03");
  EXPECT_EQ(out.model.metadata.corpus_hash, to_hex(fixture_corpus().content_hash()));
  EXPECT_EQ(out.report.config_echo.at("kernel"), "rbf");
  EXPECT_EQ(out.report.config_echo.at("C"), "10");
}

TEST(Pipeline, DateFallsBackToSourceDateEpoch) {
  ::setenv("SOURCE_DATE_EPOCH", "86400", 1);
  EXPECT_EQ(resolve_training_date(""), "1970-01-02");
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(resolve_training_date("2001-01-01"), "2001-01-01");
  EXPECT_EQ(resolve_training_date("").size(), 10u);
}

TEST(Pipeline, BowClassifiesFixtureWell) {
  auto cfg = PipelineConfig::bow_rbf();
  const auto out = train_pipeline(fixture_corpus(), cfg);
  EXPECT_GE(out.report.accuracy, 0.9);
}

TEST(Classify, LowSignalForOutOfVocabularySentence) {
  const auto model = fit_model(fixture_corpus(), PipelineConfig::bow_rbf());
  const auto c = classify(model, "de para com");
  EXPECT_TRUE(c.low_signal);
  EXPECT_EQ(c.label, label_for(c.score));
  EXPECT_FALSE(classify(model, "passa o celular agora").low_signal);
  EXPECT_EQ(classify(model, "passa o celular agora").label, Label::Violent);
  EXPECT_EQ(classify(model, "vamos almoçar amanhã").label, Label::Benign);
}

TEST(BuildTrainingSet, SmoteAppendsToMinorityOnly) {
  const std::vector<std::vector<Token>> docs{
      {{"a", "a"}}, {{"b", "b"}}, {{"a", "a"}, {"b", "b"}}, {{"c", "c"}}, {{"c", "c"}},
      {{"c", "c"}}, {{"c", "c"}}, {{"c", "c"}}};
  const std::vector<Label> labels{Label::Violent, Label::Violent, Label::Violent, Label::Benign,
                                  Label::Benign,  Label::Benign,  Label::Benign,  Label::Benign};
  const Featurizer f(BowFeaturizer{BowMode::Tf, Vocabulary({"a", "b", "c"}, {2, 2, 5}, 8)});
  const auto set = build_training_set(f, docs, labels, SmoteConfig{2, 1.0, 1});
  EXPECT_EQ(set.n_synthetic, 2u);
  ASSERT_EQ(set.x.size(), 10u);
  EXPECT_EQ(set.y[8], 1);
  EXPECT_EQ(set.y[9], 1);
  EXPECT_EQ(set.x[9][2], 0.0);
}
