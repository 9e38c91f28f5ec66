#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "vsd/corpus.hpp"
#include "vsd/model_io.hpp"

namespace vsd {

// Positive class is Violent.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  void add(Label truth, Label predicted);

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Metrics whose denominator was zero; the corresponding value is reported as 0.
struct UndefinedMetrics {
  bool precision = false;     // tp + fp == 0
  bool recall = false;        // tp + fn == 0 (also tpr, fnr)
  bool f1 = false;            // precision + recall == 0
  bool specificity = false;   // tn + fp == 0 (tnr, fpr)
  bool f1_negative = false;

  bool any() const { return precision || recall || f1 || specificity || f1_negative; }
  friend bool operator==(const UndefinedMetrics&, const UndefinedMetrics&) = default;
};

struct EvalReport {
  ConfusionMatrix matrix;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;           // positive-class F1
  double f1_negative = 0.0;
  double f1_macro = 0.0;     // mean of the two per-class F1 scores
  double tpr = 0.0;
  double fpr = 0.0;
  double tnr = 0.0;
  double fnr = 0.0;
  UndefinedMetrics undefined;
  std::map<std::string, std::string> config_echo;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Throws EmptyTestSet for an all-zero matrix.
EvalReport compute_report(const ConfusionMatrix& matrix);

// Classifies every sentence of `test` with `model` and tallies the results.
EvalReport evaluate(const TrainedModel& model, const Corpus& test);

// Human-readable table; numbers use the same shortest round-trip formatting
// as the JSON document.
std::string render_text(const EvalReport& report);
// {accuracy, f1_positive, f1_macro, precision, recall, matrix{...}, rates{...},
//  undefined{...}, config_echo{...}}
std::string render_json(const EvalReport& report);
void write_report(const EvalReport& report, const std::filesystem::path& path);

std::string format_number(double value);

}  // namespace vsd
