#include "vsd/eval.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

#include "vsd/error.hpp"

namespace vsd {

void ConfusionMatrix::add(Label truth, Label predicted) {
  if (truth == Label::Violent) {
    (predicted == Label::Violent ? tp : fn) += 1;
  } else {
    (predicted == Label::Violent ? fp : tn) += 1;
  }
}

namespace {

double ratio(std::size_t num, std::size_t den, bool& undefined) {
  if (den == 0) {
    undefined = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r, bool& undefined) {
  if (p + r == 0.0) {
    undefined = true;
    return 0.0;
  }
  return 2.0 * p * r / (p + r);
}

}  // namespace

EvalReport compute_report(const ConfusionMatrix& m) {
  if (m.total() == 0) throw Error(Errc::EmptyTestSet, "confusion matrix is empty");
  EvalReport r;
  r.matrix = m;
  auto& u = r.undefined;
  r.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
  r.precision = ratio(m.tp, m.tp + m.fp, u.precision);
  r.recall = ratio(m.tp, m.tp + m.fn, u.recall);
  r.f1 = harmonic(r.precision, r.recall, u.f1);

  bool unused = false;
  r.tpr = r.recall;
  r.fnr = ratio(m.fn, m.tp + m.fn, unused);
  r.tnr = ratio(m.tn, m.tn + m.fp, u.specificity);
  r.fpr = ratio(m.fp, m.tn + m.fp, unused);

  bool neg_precision_undefined = false;
  const double neg_precision = ratio(m.tn, m.tn + m.fn, neg_precision_undefined);
  r.f1_negative = harmonic(neg_precision, r.tnr, u.f1_negative);
  r.f1_macro = 0.5 * (r.f1 + r.f1_negative);
  return r;
}

EvalReport evaluate(const TrainedModel& model, const Corpus& test) {
  if (test.empty()) throw Error(Errc::EmptyTestSet, "test corpus is empty");
  if (model.featurizer.dim() != model.svm.feature_dim) {
    throw Error(Errc::FeaturizerMismatch, "featurizer produces dimension " +
                                              std::to_string(model.featurizer.dim()) +
                                              ", model expects " +
                                              std::to_string(model.svm.feature_dim));
  }
  ConfusionMatrix m;
  for (const auto& s : test) {
    const auto tokens = preprocess(s.text, model.stops, model.stem_rules);
    const auto features = model.featurizer.apply(tokens);
    m.add(s.label, predict(model.svm, features.values));
  }
  return compute_report(m);
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string render_text(const EvalReport& r) {
  const auto& m = r.matrix;
  std::ostringstream out;
  out << "confusion matrix (positive = violent)\n"
      << "                 pred violent  pred benign\n"
      << "  true violent   tp=" << m.tp << "  fn=" << m.fn << "\n"
      << "  true benign    fp=" << m.fp << "  tn=" << m.tn << "\n"
      << "accuracy     " << format_number(r.accuracy) << "\n"
      << "precision    " << format_number(r.precision) << (r.undefined.precision ? "  (undefined)" : "") << "\n"
      << "recall       " << format_number(r.recall) << (r.undefined.recall ? "  (undefined)" : "") << "\n"
      << "f1           " << format_number(r.f1) << (r.undefined.f1 ? "  (undefined)" : "") << "\n"
      << "f1_macro     " << format_number(r.f1_macro) << "\n"
      << "tpr          " << format_number(r.tpr) << "\n"
      << "fpr          " << format_number(r.fpr) << "\n"
      << "tnr          " << format_number(r.tnr) << "\n"
      << "fnr          " << format_number(r.fnr) << "\n";
  return out.str();
}

std::string render_json(const EvalReport& r) {
  nlohmann::ordered_json doc;
  doc["accuracy"] = r.accuracy;
  doc["f1_positive"] = r.f1;
  doc["f1_macro"] = r.f1_macro;
  doc["precision"] = r.precision;
  doc["recall"] = r.recall;
  doc["matrix"] = {{"tp", r.matrix.tp}, {"fp", r.matrix.fp}, {"tn", r.matrix.tn}, {"fn", r.matrix.fn}};
  doc["rates"] = {{"tpr", r.tpr}, {"fpr", r.fpr}, {"tnr", r.tnr}, {"fnr", r.fnr}};
  doc["undefined"] = {{"precision", r.undefined.precision},
                      {"recall", r.undefined.recall},
                      {"f1", r.undefined.f1},
                      {"specificity", r.undefined.specificity},
                      {"f1_negative", r.undefined.f1_negative}};
  doc["config_echo"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config_echo) doc["config_echo"][k] = v;
  return doc.dump(2) + "\n";
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write report " + path.string());
  out << render_json(report);
  if (!out) throw Error(Errc::Io, "write failure on " + path.string());
}

}  // namespace vsd
