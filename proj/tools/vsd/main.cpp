// vsd: train, evaluate and run the violent-speech classifier from the shell.
#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vsd/corpus.hpp"
#include "vsd/error.hpp"
#include "vsd/eval.hpp"
#include "vsd/grid_search.hpp"
#include "vsd/jsgf.hpp"
#include "vsd/model_io.hpp"
#include "vsd/monitor.hpp"
#include "vsd/pipeline.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kRuntime = 3 };

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string stoplist;
  std::string stemrules;
};

// Pipeline flags shared by train and grid-search. Unset fields fall back to
// the preset chosen by --featurizer.
struct PipelineFlags {
  std::string featurizer = "bow";
  std::optional<std::string> bow_mode;
  std::optional<std::size_t> max_terms;
  std::string embeddings;
  std::optional<std::string> kernel;
  std::optional<std::string> gamma;  // number or "auto"
  std::optional<int> degree;
  std::optional<double> coef0;
  std::optional<double> cost;
  std::optional<double> tolerance;
  std::optional<bool> smote;
  std::optional<std::size_t> smote_k;
  std::optional<double> smote_ratio;
  double train_fraction = 0.7;
  std::string date;
  bool dedup = false;
};

void add_pipeline_flags(CLI::App& cmd, PipelineFlags& f) {
  cmd.add_option("--featurizer", f.featurizer,
                 "bow (boolean BOW + RBF preset) or embedding (mean vectors + poly + SMOTE preset)")
      ->check(CLI::IsMember({"bow", "embedding"}));
  cmd.add_option("--bow-mode", f.bow_mode, "boolean, tf or tfidf")
      ->check(CLI::IsMember({"boolean", "tf", "tfidf"}));
  cmd.add_option("--max-terms", f.max_terms, "vocabulary size")->check(CLI::PositiveNumber);
  cmd.add_option("--embeddings", f.embeddings, "word2vec text file (embedding featurizer)");
  cmd.add_option("--kernel", f.kernel, "linear, rbf or poly")
      ->check(CLI::IsMember({"linear", "rbf", "poly"}));
  cmd.add_option("--gamma", f.gamma, "kernel gamma, or 'auto' for 1/feature_dim");
  cmd.add_option("--degree", f.degree, "polynomial degree")->check(CLI::PositiveNumber);
  cmd.add_option("--coef0", f.coef0, "polynomial offset");
  cmd.add_option("-C,--cost", f.cost, "SVM cost parameter");
  cmd.add_option("--tolerance", f.tolerance, "SMO stopping tolerance");
  cmd.add_flag("--smote,!--no-smote", f.smote, "oversample the minority class on the training split");
  cmd.add_option("--smote-k", f.smote_k, "SMOTE neighbour count")->check(CLI::PositiveNumber);
  cmd.add_option("--smote-ratio", f.smote_ratio, "minority target as a multiple of the majority");
  cmd.add_option("--train-fraction", f.train_fraction, "per-class training share")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--date", f.date, "training date recorded in the model (YYYY-MM-DD)");
  cmd.add_flag("--dedup", f.dedup, "drop repeated (label, text) records before splitting");
}

vsd::PipelineConfig build_config(const PipelineFlags& f, const GlobalOptions& g) {
  vsd::PipelineConfig cfg;
  if (f.featurizer == "embedding") {
    if (f.embeddings.empty()) {
      throw CLI::ValidationError("--embeddings", "the embedding featurizer needs an embeddings file");
    }
    cfg = vsd::PipelineConfig::embedding_poly(f.embeddings);
  } else {
    cfg = vsd::PipelineConfig::bow_rbf();
    auto& bow = std::get<vsd::BowOptions>(cfg.featurizer);
    if (f.bow_mode) bow.mode = *vsd::parse_bow_mode(*f.bow_mode);
    if (f.max_terms) bow.max_terms = *f.max_terms;
  }
  auto& k = cfg.svm.kernel;
  if (f.kernel) {
    const auto kind = *vsd::parse_kernel_kind(*f.kernel);
    if (kind != k.kind) {
      const bool auto_gamma = cfg.auto_gamma;
      k = kind == vsd::KernelSpec::Kind::Linear ? vsd::KernelSpec::linear()
          : kind == vsd::KernelSpec::Kind::Rbf  ? vsd::KernelSpec::rbf(0.1)
                                                : vsd::KernelSpec::poly(4, 1.0, 1.0);
      cfg.auto_gamma = auto_gamma && kind != vsd::KernelSpec::Kind::Linear;
    }
  }
  if (f.gamma) {
    if (*f.gamma == "auto") {
      cfg.auto_gamma = true;
    } else {
      try {
        std::size_t used = 0;
        k.gamma = std::stod(*f.gamma, &used);
        if (used != f.gamma->size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw CLI::ValidationError("--gamma", "expected a number or 'auto'");
      }
      cfg.auto_gamma = false;
    }
  }
  if (f.degree) k.degree = *f.degree;
  if (f.coef0) k.coef0 = *f.coef0;
  if (f.cost) cfg.svm.cost = *f.cost;
  if (f.tolerance) cfg.svm.tolerance = *f.tolerance;
  if (f.smote) cfg.smote = *f.smote ? std::optional(vsd::SmoteConfig{}) : std::nullopt;
  if ((f.smote_k || f.smote_ratio) && !cfg.smote) cfg.smote = vsd::SmoteConfig{};
  if (cfg.smote) {
    if (f.smote_k) cfg.smote->k_neighbors = *f.smote_k;
    if (f.smote_ratio) cfg.smote->target_ratio = *f.smote_ratio;
    cfg.smote->seed = g.seed;
  }
  cfg.svm.seed = g.seed;
  cfg.split = {f.train_fraction, g.seed};
  cfg.date = f.date;
  if (!g.stoplist.empty()) cfg.stops = vsd::StopList::load(g.stoplist);
  if (!g.stemrules.empty()) cfg.stem_rules = vsd::StemRules::load(g.stemrules);
  cfg.svm.validate();
  return cfg;
}

vsd::Corpus read_corpus(const std::string& path, bool dedup) {
  auto corpus = vsd::load_corpus(path);
  return dedup ? corpus.deduplicated() : corpus;
}

vsd::ModelLoadOptions load_options(const std::string& embeddings) {
  vsd::ModelLoadOptions opts;
  if (!embeddings.empty()) opts.embeddings_path = embeddings;
  return opts;
}

void warn_if_unconverged(const vsd::TrainedModel& model) {
  if (!model.svm.converged) {
    std::cerr << "warning: SMO stopped at the iteration cap before reaching the tolerance\n";
  }
}

struct TrainArgs {
  std::string corpus;
  std::string out;
  std::string report;
  bool json = false;
  PipelineFlags pipeline;
};

int cmd_train(const TrainArgs& a, const GlobalOptions& g) {
  const auto cfg = build_config(a.pipeline, g);
  const auto corpus = read_corpus(a.corpus, a.pipeline.dedup);
  const auto outcome = vsd::train_pipeline(corpus, cfg);
  warn_if_unconverged(outcome.model);
  vsd::save_model(outcome.model, a.out);
  if (!a.report.empty()) vsd::write_report(outcome.report, a.report);
  std::cout << (a.json ? vsd::render_json(outcome.report) + "\n" : vsd::render_text(outcome.report));
  return kOk;
}

struct EvaluateArgs {
  std::string model;
  std::string corpus;
  std::string embeddings;
  std::string report;
  bool json = false;
};

int cmd_evaluate(const EvaluateArgs& a) {
  const auto model = vsd::load_model(a.model, load_options(a.embeddings));
  const auto corpus = vsd::load_corpus(a.corpus);
  const auto report = vsd::evaluate(model, corpus);
  if (!a.report.empty()) vsd::write_report(report, a.report);
  std::cout << (a.json ? vsd::render_json(report) + "\n" : vsd::render_text(report));
  return kOk;
}

struct ClassifyArgs {
  std::string model;
  std::string embeddings;
  std::string file;
  std::vector<std::string> texts;
};

void print_classification(const vsd::TrainedModel& model, const std::string& line) {
  const auto c = vsd::classify(model, line);
  std::cout << vsd::to_string(c.label) << '\t' << vsd::format_number(c.score) << '\t' << line;
  if (c.low_signal) std::cout << "\tlow-signal";
  std::cout << '\n';
}

int cmd_classify(const ClassifyArgs& a) {
  const auto model = vsd::load_model(a.model, load_options(a.embeddings));
  for (const auto& text : a.texts) print_classification(model, text);
  if (!a.file.empty()) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (a.file != "-") {
      file.open(a.file);
      if (!file) throw vsd::Error(vsd::Errc::Io, "cannot open '" + a.file + "'");
      in = &file;
    }
    std::string line;
    while (std::getline(*in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      print_classification(model, line);
    }
  }
  return kOk;
}

struct MonitorArgs {
  std::string model;
  std::string embeddings;
  std::string webhook;
  std::string command;
  double debounce = 30.0;
  bool dry_run = false;
  std::string source_id = "vsd-monitor";
  std::string input = "-";
  std::size_t retries = 3;
  long long backoff_ms = 1000;
  long long timeout_ms = 5000;
};

int cmd_monitor(const MonitorArgs& a) {
  vsd::MonitorConfig cfg;
  if (!a.webhook.empty()) cfg.webhook_url = a.webhook;
  if (!a.command.empty()) cfg.command = a.command;
  cfg.debounce_seconds = a.debounce;
  cfg.dry_run = a.dry_run;
  cfg.source_id = a.source_id;
  cfg.dispatch.retries = a.retries;
  cfg.dispatch.backoff = std::chrono::milliseconds(a.backoff_ms);
  cfg.validate();

  std::vector<std::unique_ptr<vsd::AlertSink>> sinks;
  if (!a.dry_run) {
    if (cfg.webhook_url) {
      sinks.push_back(std::make_unique<vsd::WebhookSink>(*cfg.webhook_url,
                                                         std::chrono::milliseconds(a.timeout_ms)));
    }
    if (cfg.command) sinks.push_back(std::make_unique<vsd::CommandSink>(*cfg.command));
  }
  auto model = std::make_shared<const vsd::TrainedModel>(
      vsd::load_model(a.model, load_options(a.embeddings)));

  std::ifstream file;
  std::istream* in = &std::cin;
  if (a.input != "-") {
    file.open(a.input);
    if (!file) throw vsd::Error(vsd::Errc::Io, "cannot open '" + a.input + "'");
    in = &file;
  }
  vsd::Monitor monitor(std::move(model), cfg, std::move(sinks), std::cout);
  monitor.run(*in);
  const auto s = monitor.stats();
  std::cerr << "lines=" << s.lines << " detections=" << s.detections
            << " alerts=" << s.alerts_emitted << " delivered=" << s.alerts_delivered
            << " failed=" << s.alerts_failed << " dropped=" << s.alerts_dropped << '\n';
  return kOk;
}

struct GridArgs {
  std::string corpus;
  std::vector<double> costs{10.0};
  std::vector<std::string> gammas;
  std::size_t folds = 5;
  PipelineFlags pipeline;
};

int cmd_grid_search(const GridArgs& a, const GlobalOptions& g) {
  vsd::GridSearchConfig grid;
  grid.base = build_config(a.pipeline, g);
  grid.costs = a.costs;
  grid.folds = a.folds;
  for (const auto& text : a.gammas) {
    if (text == "auto") {
      grid.gammas.clear();
      grid.base.auto_gamma = true;
      break;
    }
    try {
      grid.gammas.push_back(std::stod(text));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--gammas", "expected numbers or 'auto'");
    }
  }
  const auto corpus = read_corpus(a.corpus, a.pipeline.dedup);
  const auto split = vsd::stratified_split(corpus, grid.base.split);
  const auto result = vsd::grid_search(split.train, grid);
  std::cout << vsd::render_grid(result);
  return kOk;
}

struct AugmentArgs {
  std::string grammar;
  std::string rule;
  std::string label;
  std::string mode = "enumerate";
  std::size_t count = 100;
  std::string out = "-";
  bool dedup = false;
};

int cmd_augment(const AugmentArgs& a, const GlobalOptions& g) {
  vsd::Label label{};
  if (!vsd::parse_label(a.label, label)) {
    throw CLI::ValidationError("--label", "expected violent or benign");
  }
  std::ifstream file(a.grammar, std::ios::binary);
  if (!file) throw vsd::Error(vsd::Errc::Io, "cannot open '" + a.grammar + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  const auto grammar = vsd::jsgf::parse_grammar(buffer.str());

  std::vector<std::string> phrases;
  bool dedup = a.dedup;
  if (a.mode == "enumerate") {
    phrases = vsd::jsgf::enumerate_phrases(grammar, a.rule, a.count);
    dedup = true;
  } else {
    phrases = vsd::jsgf::sample_phrases(grammar, a.rule, a.count, g.seed);
  }
  std::vector<vsd::LabeledSentence> records;
  std::set<std::string, std::less<>> seen;
  for (auto& phrase : phrases) {
    if (phrase.empty()) continue;
    if (dedup && !seen.insert(phrase).second) continue;
    records.push_back({std::move(phrase), label});
  }
  const vsd::Corpus corpus(std::move(records));
  if (a.out == "-") {
    vsd::write_corpus(std::cout, corpus);
  } else {
    vsd::save_corpus(a.out, corpus);
  }
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Violent speech detection: train, evaluate, classify and monitor"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file of option defaults (flags take precedence)");
  app.option_defaults()->always_capture_default();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for splitting, SMOTE and sampling");
  app.add_option("--stoplist", global.stoplist, "stop-word list (one word per line)")
      ->check(CLI::ExistingFile);
  app.add_option("--stemrules", global.stemrules, "stemming rules (pass;suffix;min;replacement)")
      ->check(CLI::ExistingFile);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train a model and report held-out metrics");
  train_cmd->add_option("--corpus", train.corpus, "labeled corpus (label<TAB>text)")->required();
  train_cmd->add_option("-o,--out", train.out, "model file to write")->required();
  train_cmd->add_option("--report", train.report, "also write the JSON report here");
  train_cmd->add_flag("--json", train.json, "print the report as JSON");
  add_pipeline_flags(*train_cmd, train.pipeline);

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "score a saved model on a labeled corpus");
  eval_cmd->add_option("--model", eval.model, "model file")->required();
  eval_cmd->add_option("--corpus", eval.corpus, "labeled corpus")->required();
  eval_cmd->add_option("--embeddings", eval.embeddings, "override the model's embeddings path");
  eval_cmd->add_option("--report", eval.report, "also write the JSON report here");
  eval_cmd->add_flag("--json", eval.json, "print the report as JSON");

  ClassifyArgs cls;
  auto* cls_cmd = app.add_subcommand("classify", "label sentences given as arguments or a file");
  cls_cmd->add_option("--model", cls.model, "model file")->required();
  cls_cmd->add_option("--embeddings", cls.embeddings, "override the model's embeddings path");
  cls_cmd->add_option("-f,--file", cls.file, "one sentence per line; '-' for standard input");
  cls_cmd->add_option("text", cls.texts, "sentences to classify");

  MonitorArgs mon;
  auto* mon_cmd = app.add_subcommand("monitor", "classify a line stream and dispatch alerts");
  mon_cmd->add_option("--model", mon.model, "model file")->required();
  mon_cmd->add_option("--embeddings", mon.embeddings, "override the model's embeddings path");
  mon_cmd->add_option("--webhook", mon.webhook, "http:// URL receiving alert POSTs");
  mon_cmd->add_option("--command", mon.command, "shell command receiving each alert on stdin");
  mon_cmd->add_option("--debounce", mon.debounce, "seconds over which detections collapse")
      ->check(CLI::NonNegativeNumber);
  mon_cmd->add_flag("--dry-run", mon.dry_run, "log alerts without dispatching them");
  mon_cmd->add_option("--source-id", mon.source_id, "source_id field of each alert");
  mon_cmd->add_option("--input", mon.input, "input file; '-' for standard input");
  mon_cmd->add_option("--retries", mon.retries, "delivery retries after the first attempt");
  mon_cmd->add_option("--retry-backoff-ms", mon.backoff_ms, "first retry delay, doubled each time")
      ->check(CLI::NonNegativeNumber);
  mon_cmd->add_option("--timeout-ms", mon.timeout_ms, "webhook connect/read timeout")
      ->check(CLI::PositiveNumber);

  GridArgs grid;
  auto* grid_cmd = app.add_subcommand("grid-search", "cross-validate a C x gamma grid");
  grid_cmd->add_option("--corpus", grid.corpus, "labeled corpus")->required();
  grid_cmd->add_option("--costs", grid.costs, "C values")->delimiter(',');
  grid_cmd->add_option("--gammas", grid.gammas, "gamma values, or 'auto'")->delimiter(',');
  grid_cmd->add_option("--folds", grid.folds, "cross-validation folds")->check(CLI::Range(2, 1000));
  add_pipeline_flags(*grid_cmd, grid.pipeline);

  AugmentArgs aug;
  auto* aug_cmd = app.add_subcommand("augment", "generate labeled phrases from a JSGF grammar");
  aug_cmd->add_option("--grammar", aug.grammar, "grammar file")->required();
  aug_cmd->add_option("--rule", aug.rule, "rule to expand")->required();
  aug_cmd->add_option("--label", aug.label, "label for every phrase")->required();
  aug_cmd->add_option("--mode", aug.mode, "enumerate or sample")
      ->check(CLI::IsMember({"enumerate", "sample"}));
  aug_cmd->add_option("-n,--count", aug.count, "phrase limit (enumerate) or count (sample)");
  aug_cmd->add_option("-o,--out", aug.out, "output corpus; '-' for standard output");
  aug_cmd->add_flag("--dedup", aug.dedup, "drop repeated phrases in sample mode");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train, global);
    if (*eval_cmd) return cmd_evaluate(eval);
    if (*cls_cmd) return cmd_classify(cls);
    if (*mon_cmd) return cmd_monitor(mon);
    if (*grid_cmd) return cmd_grid_search(grid, global);
    if (*aug_cmd) return cmd_augment(aug, global);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const vsd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == vsd::Errc::Io ? kRuntime : kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
}
