#include <cmath>

#include "vsd/error.hpp"
#include "vsd/svm.hpp"

namespace vsd {

std::string_view to_string(KernelSpec::Kind kind) {
  switch (kind) {
    case KernelSpec::Kind::Linear: return "linear";
    case KernelSpec::Kind::Rbf: return "rbf";
    case KernelSpec::Kind::Poly: return "poly";
  }
  return "linear";
}

std::optional<KernelSpec::Kind> parse_kernel_kind(std::string_view name) {
  if (name == "linear") return KernelSpec::Kind::Linear;
  if (name == "rbf") return KernelSpec::Kind::Rbf;
  if (name == "poly" || name == "polynomial") return KernelSpec::Kind::Poly;
  return std::nullopt;
}

void KernelSpec::validate() const {
  if (!std::isfinite(gamma) || !std::isfinite(coef0)) {
    throw Error(Errc::InvalidArgument, "kernel parameters must be finite");
  }
  if (kind != Kind::Linear && !(gamma > 0.0)) {
    throw Error(Errc::InvalidArgument, "kernel gamma must be > 0");
  }
  if (kind == Kind::Poly && degree < 1) {
    throw Error(Errc::InvalidArgument, "polynomial degree must be >= 1");
  }
}

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

double ipow(double base, int exp) {
  double result = 1.0;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::DimMismatch, "kernel arguments have dimensions " + std::to_string(x.size()) +
                                       " and " + std::to_string(y.size()));
  }
  switch (spec.kind) {
    case KernelSpec::Kind::Linear:
      return dot(x, y);
    case KernelSpec::Kind::Rbf: {
      double d2 = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        d2 += d * d;
      }
      return std::exp(-spec.gamma * d2);
    }
    case KernelSpec::Kind::Poly:
      return ipow(spec.gamma * dot(x, y) + spec.coef0, spec.degree);
  }
  return 0.0;
}

}  // namespace vsd
