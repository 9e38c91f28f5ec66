#include "vsd/grid_search.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "vsd/error.hpp"
#include "vsd/random.hpp"

namespace vsd {

std::vector<Fold> stratified_folds(const Corpus& corpus, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(Errc::InvalidArgument, "cross-validation needs at least 2 folds");
  const auto& counts = corpus.counts();
  if (counts.violent < k || counts.benign < k) {
    throw Error(Errc::ClassTooSmall, "each class needs at least " + std::to_string(k) +
                                         " sentences for " + std::to_string(k) + "-fold CV");
  }
  std::vector<std::size_t> fold_of(corpus.size());
  Rng rng(seed);
  for (Label label : {Label::Violent, Label::Benign}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].label == label) members.push_back(i);
    }
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t r = 0; r < members.size(); ++r) fold_of[members[r]] = r % k;
  }
  std::vector<Fold> folds;
  folds.reserve(k);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<LabeledSentence> train;
    std::vector<LabeledSentence> validation;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      (fold_of[i] == f ? validation : train).push_back(corpus[i]);
    }
    folds.push_back({Corpus(std::move(train)), Corpus(std::move(validation))});
  }
  return folds;
}

GridSearchResult grid_search(const Corpus& train, const GridSearchConfig& cfg) {
  if (cfg.costs.empty()) throw Error(Errc::InvalidArgument, "grid needs at least one C value");
  const bool uses_gamma = cfg.base.svm.kernel.kind != KernelSpec::Kind::Linear;
  // gamma 0 stands for "auto" (1 / feature_dim) or "not applicable" (linear).
  std::vector<double> gammas;
  if (!uses_gamma) gammas = {0.0};
  else if (!cfg.gammas.empty()) gammas = cfg.gammas;
  else gammas = {cfg.base.auto_gamma ? 0.0 : cfg.base.svm.kernel.gamma};
  for (double g : cfg.gammas) {
    if (!(g > 0.0)) throw Error(Errc::InvalidArgument, "grid gamma values must be > 0");
  }
  std::vector<double> costs = cfg.costs;
  std::sort(costs.begin(), costs.end());
  costs.erase(std::unique(costs.begin(), costs.end()), costs.end());
  std::sort(gammas.begin(), gammas.end());
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());

  // Load embeddings once for all folds.
  PipelineConfig base = cfg.base;
  if (auto* emb = std::get_if<EmbeddingOptions>(&base.featurizer); emb && !emb->table) {
    emb->table = std::make_shared<EmbeddingTable>(load_embeddings(emb->path));
  }

  const auto folds = stratified_folds(train, cfg.folds, base.split.seed);
  GridSearchResult result;
  result.uses_gamma = uses_gamma;
  for (double cost : costs) {
    for (double gamma : gammas) {
      PipelineConfig run = base;
      run.svm.cost = cost;
      if (uses_gamma && gamma > 0.0) {
        run.svm.kernel.gamma = gamma;
        run.auto_gamma = false;
      }
      GridCell cell{cost, gamma, {}, 0.0};
      for (const auto& fold : folds) {
        const auto model = fit_model(fold.train, run);
        cell.fold_f1.push_back(evaluate(model, fold.validation).f1);
      }
      cell.mean_f1 = std::accumulate(cell.fold_f1.begin(), cell.fold_f1.end(), 0.0) /
                     static_cast<double>(cell.fold_f1.size());
      result.cells.push_back(std::move(cell));
    }
  }
  // Cells are in ascending (C, gamma) order, so a strict comparison keeps the
  // smallest parameters on ties.
  result.best = result.cells.front();
  for (const auto& cell : result.cells) {
    if (cell.mean_f1 > result.best.mean_f1) result.best = cell;
  }
  return result;
}

std::string render_grid(const GridSearchResult& result) {
  auto gamma_text = [&](double g) {
    if (!result.uses_gamma) return std::string("-");
    return g > 0.0 ? format_number(g) : std::string("auto");
  };
  std::ostringstream out;
  out << "C\tgamma\tmean_f1\tfold_f1\n";
  for (const auto& cell : result.cells) {
    out << format_number(cell.cost) << '\t'
        << gamma_text(cell.gamma) << '\t'
        << format_number(cell.mean_f1) << '\t';
    for (std::size_t i = 0; i < cell.fold_f1.size(); ++i) {
      if (i) out << ',';
      out << format_number(cell.fold_f1[i]);
    }
    out << '\n';
  }
  out << "best\tC=" << format_number(result.best.cost) << "\tgamma="
      << gamma_text(result.best.gamma)
      << "\tmean_f1=" << format_number(result.best.mean_f1) << '\n';
  return out.str();
}

}  // namespace vsd
