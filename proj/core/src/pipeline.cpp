#include "vsd/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>

#include "vsd/error.hpp"

namespace vsd {

PipelineConfig PipelineConfig::bow_rbf() {
  PipelineConfig cfg;
  cfg.featurizer = BowOptions{BowMode::Boolean, 1000};
  cfg.svm.kernel = KernelSpec::rbf(0.1);
  cfg.svm.cost = 10.0;
  return cfg;
}

PipelineConfig PipelineConfig::embedding_poly(std::filesystem::path embeddings) {
  PipelineConfig cfg;
  cfg.featurizer = EmbeddingOptions{std::move(embeddings), nullptr};
  cfg.svm.kernel = KernelSpec::poly(4, 1.0, 1.0);
  cfg.auto_gamma = true;
  cfg.svm.cost = 50.0;
  cfg.smote = SmoteConfig{};
  return cfg;
}

Featurizer fit_featurizer(const PipelineConfig& cfg, std::span<const std::vector<Token>> docs) {
  if (const auto* bow = std::get_if<BowOptions>(&cfg.featurizer)) {
    return Featurizer(BowFeaturizer{bow->mode, build_vocabulary(docs, bow->max_terms)});
  }
  const auto& opts = std::get<EmbeddingOptions>(cfg.featurizer);
  auto table = opts.table;
  if (!table) table = std::make_shared<EmbeddingTable>(load_embeddings(opts.path));
  EmbeddingFeaturizer emb;
  emb.path = opts.path.string();
  emb.dim = table->dim();
  emb.content_hash = table->content_hash();
  emb.table = std::move(table);
  return Featurizer(std::move(emb));
}

TrainingSet build_training_set(const Featurizer& featurizer,
                               std::span<const std::vector<Token>> docs,
                               std::span<const Label> labels,
                               const std::optional<SmoteConfig>& smote) {
  TrainingSet set;
  set.x.reserve(docs.size());
  set.y.reserve(docs.size());
  std::size_t violent = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    set.x.push_back(featurizer.apply(docs[i]).values);
    set.y.push_back(label_sign(labels[i]));
    if (labels[i] == Label::Violent) ++violent;
  }
  if (!smote) return set;

  const std::size_t benign = docs.size() - violent;
  const Label minority = violent <= benign ? Label::Violent : Label::Benign;
  std::vector<FeatureVector> minority_x;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (labels[i] == minority) minority_x.push_back(set.x[i]);
  }
  auto synthetic = smote_oversample(minority_x, std::max(violent, benign), *smote);
  set.n_synthetic = synthetic.size();
  for (auto& s : synthetic) {
    set.x.push_back(std::move(s));
    set.y.push_back(label_sign(minority));
  }
  return set;
}

std::string resolve_training_date(const std::string& configured) {
  if (!configured.empty()) return configured;
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[16];
  std::strftime(buf, sizeof(buf), "%Y-%m-%d", &tm);
  return buf;
}

TrainedModel fit_model(const Corpus& train, const PipelineConfig& cfg) {
  if (train.empty()) throw Error(Errc::EmptyTrainingSet, "training partition is empty");
  std::vector<std::vector<Token>> docs;
  std::vector<Label> labels;
  docs.reserve(train.size());
  labels.reserve(train.size());
  for (const auto& s : train) {
    docs.push_back(preprocess(s.text, cfg.stops, cfg.stem_rules));
    labels.push_back(s.label);
  }

  TrainedModel model;
  model.stops = cfg.stops;
  model.stem_rules = cfg.stem_rules;
  model.featurizer = fit_featurizer(cfg, docs);

  SvmConfig svm_cfg = cfg.svm;
  if (cfg.auto_gamma) svm_cfg.kernel.gamma = 1.0 / static_cast<double>(model.featurizer.dim());

  const auto set = build_training_set(model.featurizer, docs, labels, cfg.smote);
  model.svm = vsd::train(set.x, set.y, svm_cfg);

  model.metadata.seed = cfg.split.seed;
  model.metadata.date = resolve_training_date(cfg.date);
  model.metadata.train_fraction = cfg.split.train_fraction;
  model.metadata.n_train = train.size();
  model.metadata.n_synthetic = set.n_synthetic;
  return model;
}

std::map<std::string, std::string> describe(const PipelineConfig& cfg) {
  std::map<std::string, std::string> out;
  if (const auto* bow = std::get_if<BowOptions>(&cfg.featurizer)) {
    out["featurizer"] = "bow";
    out["bow_mode"] = std::string(to_string(bow->mode));
    out["max_terms"] = std::to_string(bow->max_terms);
  } else {
    out["featurizer"] = "embedding";
    out["embeddings"] = std::get<EmbeddingOptions>(cfg.featurizer).path.string();
  }
  const auto& k = cfg.svm.kernel;
  out["kernel"] = std::string(to_string(k.kind));
  if (k.kind != KernelSpec::Kind::Linear) {
    out["gamma"] = cfg.auto_gamma ? "auto" : format_number(k.gamma);
  }
  if (k.kind == KernelSpec::Kind::Poly) {
    out["degree"] = std::to_string(k.degree);
    out["coef0"] = format_number(k.coef0);
  }
  out["C"] = format_number(cfg.svm.cost);
  out["smote"] = cfg.smote ? "on" : "off";
  if (cfg.smote) {
    out["smote_k"] = std::to_string(cfg.smote->k_neighbors);
    out["smote_ratio"] = format_number(cfg.smote->target_ratio);
  }
  out["seed"] = std::to_string(cfg.split.seed);
  out["train_fraction"] = format_number(cfg.split.train_fraction);
  return out;
}

TrainOutcome train_pipeline(const Corpus& corpus, const PipelineConfig& cfg) {
  TrainOutcome out;
  out.split = stratified_split(corpus, cfg.split);
  out.model = fit_model(out.split.train, cfg);
  out.model.metadata.corpus_hash = to_hex(corpus.content_hash());
  out.report = evaluate(out.model, out.split.test);
  out.report.config_echo = describe(cfg);
  return out;
}

Classification classify(const TrainedModel& model, std::string_view text) {
  const auto tokens = preprocess(text, model.stops, model.stem_rules);
  const auto features = model.featurizer.apply(tokens);
  const double score = decision_value(model.svm, features.values);
  return {label_for(score), score, features.low_signal};
}

}  // namespace vsd
