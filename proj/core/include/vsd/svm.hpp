#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsd/corpus.hpp"
#include "vsd/featurize.hpp"

namespace vsd {

struct KernelSpec {
  enum class Kind { Linear, Rbf, Poly };

  Kind kind = Kind::Linear;
  double gamma = 1.0;
  int degree = 3;
  double coef0 = 0.0;

  static KernelSpec linear() { return {}; }
  static KernelSpec rbf(double gamma) { return {Kind::Rbf, gamma, 3, 0.0}; }
  static KernelSpec poly(int degree, double gamma, double coef0) {
    return {Kind::Poly, gamma, degree, coef0};
  }

  // Throws InvalidArgument on non-finite parameters, gamma <= 0, degree < 1.
  void validate() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

std::string_view to_string(KernelSpec::Kind kind);
std::optional<KernelSpec::Kind> parse_kernel_kind(std::string_view name);

// Linear: x.y   Rbf: exp(-gamma |x-y|^2)   Poly: (gamma x.y + coef0)^degree
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

struct SvmConfig {
  KernelSpec kernel;
  double cost = 1.0;
  double tolerance = 1e-3;             // stop when max KKT violation <= tolerance
  std::size_t max_iterations = 10'000'000;
  std::size_t cache_mb = 100;          // kernel row cache budget
  std::uint64_t seed = 0;

  void validate() const;
};

// Full solution of the C-SVC dual for the training set, before support
// vectors are extracted.
struct DualSolution {
  std::vector<double> alpha;
  double bias = 0.0;
  double objective = 0.0;  // sum(alpha) - 1/2 alpha' Q alpha (maximised)
  std::size_t iterations = 0;
  bool converged = true;
};

// SMO with second-order working-pair selection. y entries must be +1/-1.
DualSolution solve_dual(std::span<const FeatureVector> x, std::span<const int> y,
                        const SvmConfig& cfg);

// Violent maps to +1, Benign to -1.
inline int label_sign(Label label) { return label == Label::Violent ? 1 : -1; }

struct SvmModel {
  KernelSpec kernel;
  double cost = 1.0;
  std::size_t feature_dim = 0;
  std::vector<FeatureVector> support_vectors;
  std::vector<double> dual_coefs;  // alpha_i * y_i
  double bias = 0.0;
  bool converged = true;           // false: iteration cap reached before tolerance
  std::size_t iterations = 0;

  friend bool operator==(const SvmModel&, const SvmModel&) = default;
};

// Multipliers above this are kept as support vectors.
inline constexpr double kSupportVectorThreshold = 1e-12;

SvmModel train(std::span<const FeatureVector> x, std::span<const int> y, const SvmConfig& cfg);

// f(x) = sum_i coef_i K(sv_i, x) + b
double decision_value(const SvmModel& model, std::span<const double> x);
std::vector<double> decision_values(const SvmModel& model, std::span<const FeatureVector> xs);

// Violent when f(x) >= 0; a tie goes to Violent.
inline Label label_for(double decision) { return decision >= 0.0 ? Label::Violent : Label::Benign; }
Label predict(const SvmModel& model, std::span<const double> x);

}  // namespace vsd
