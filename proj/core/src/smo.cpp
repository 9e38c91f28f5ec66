#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <unordered_map>

#include "vsd/error.hpp"
#include "vsd/svm.hpp"

namespace vsd {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// LRU cache of rows of Q, where Q_ij = y_i y_j K(x_i, x_j).
class QRowCache {
 public:
  QRowCache(std::span<const FeatureVector> x, std::span<const int> y, const KernelSpec& kernel,
            std::size_t budget_bytes)
      : x_(x), y_(y), kernel_(kernel) {
    const std::size_t row_bytes = std::max<std::size_t>(1, x.size() * sizeof(double));
    capacity_ = std::max<std::size_t>(2, budget_bytes / row_bytes);
  }

  // The returned span stays valid until two further distinct rows are fetched.
  std::span<const double> row(std::size_t i) {
    if (auto it = slots_.find(i); it != slots_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->values;
    }
    std::vector<double> values;
    if (slots_.size() >= capacity_) {
      auto victim = std::prev(lru_.end());
      values = std::move(victim->values);
      slots_.erase(victim->index);
      lru_.erase(victim);
    }
    values.resize(x_.size());
    const double yi = y_[i];
    for (std::size_t j = 0; j < x_.size(); ++j) {
      values[j] = yi * y_[j] * kernel_eval(kernel_, x_[i], x_[j]);
    }
    lru_.push_front({i, std::move(values)});
    slots_[i] = lru_.begin();
    return lru_.front().values;
  }

 private:
  struct Slot {
    std::size_t index;
    std::vector<double> values;
  };

  std::span<const FeatureVector> x_;
  std::span<const int> y_;
  KernelSpec kernel_;
  std::size_t capacity_;
  std::list<Slot> lru_;
  std::unordered_map<std::size_t, std::list<Slot>::iterator> slots_;
};

void check_inputs(std::span<const FeatureVector> x, std::span<const int> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::InvalidArgument, "feature and label counts differ");
  }
  bool has_pos = false;
  bool has_neg = false;
  for (int label : y) {
    if (label == 1) has_pos = true;
    else if (label == -1) has_neg = true;
    else throw Error(Errc::InvalidArgument, "labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) {
    throw Error(Errc::SingleClass, "training data must contain both classes");
  }
  const std::size_t dim = x.front().size();
  for (const auto& v : x) {
    if (v.size() != dim) throw Error(Errc::DimMismatch, "training vectors differ in dimension");
  }
}

}  // namespace

void SvmConfig::validate() const {
  kernel.validate();
  if (!(cost > 0.0) || !std::isfinite(cost)) throw Error(Errc::InvalidArgument, "C must be > 0");
  if (!(tolerance > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be > 0");
}

DualSolution solve_dual(std::span<const FeatureVector> x, std::span<const int> y,
                        const SvmConfig& cfg) {
  cfg.validate();
  check_inputs(x, y);

  const std::size_t n = x.size();
  const double c = cfg.cost;
  QRowCache cache(x, y, cfg.kernel, cfg.cache_mb * 1024 * 1024);

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = kernel_eval(cfg.kernel, x[i], x[i]);

  DualSolution sol;
  auto& alpha = sol.alpha;
  alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a

  auto is_upper = [&](std::size_t t) { return alpha[t] >= c; };
  auto is_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  sol.converged = false;
  while (sol.iterations < cfg.max_iterations) {
    // i: maximal violator in I_up.
    double gmax = -kInf;
    std::ptrdiff_t i_sel = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1) {
        if (!is_upper(t) && -grad[t] >= gmax) {
          gmax = -grad[t];
          i_sel = static_cast<std::ptrdiff_t>(t);
        }
      } else if (!is_lower(t) && grad[t] >= gmax) {
        gmax = grad[t];
        i_sel = static_cast<std::ptrdiff_t>(t);
      }
    }
    // j: second-order selection over I_low.
    double gmax2 = -kInf;
    std::ptrdiff_t j_sel = -1;
    double best = kInf;
    std::span<const double> qi;
    if (i_sel != -1) qi = cache.row(static_cast<std::size_t>(i_sel));
    for (std::size_t t = 0; t < n && i_sel != -1; ++t) {
      const auto i = static_cast<std::size_t>(i_sel);
      double grad_diff;
      double quad;
      if (y[t] == 1) {
        if (is_lower(t)) continue;
        gmax2 = std::max(gmax2, grad[t]);
        grad_diff = gmax + grad[t];
        quad = diag[i] + diag[t] - 2.0 * y[i] * qi[t];
      } else {
        if (is_upper(t)) continue;
        gmax2 = std::max(gmax2, -grad[t]);
        grad_diff = gmax - grad[t];
        quad = diag[i] + diag[t] + 2.0 * y[i] * qi[t];
      }
      if (grad_diff > 0.0) {
        const double obj = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
        if (obj <= best) {
          best = obj;
          j_sel = static_cast<std::ptrdiff_t>(t);
        }
      }
    }
    if (gmax + gmax2 <= cfg.tolerance || j_sel == -1) {
      sol.converged = true;
      break;
    }
    ++sol.iterations;

    const auto i = static_cast<std::size_t>(i_sel);
    const auto j = static_cast<std::size_t>(j_sel);
    qi = cache.row(i);
    const auto qj = cache.row(j);
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];

    if (y[i] != y[j]) {
      double quad = diag[i] + diag[j] + 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = diag[i] + diag[j] - 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = alpha[i] - old_ai;
    const double dj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += qi[t] * di + qj[t] * dj;
  }

  // Bias: average y_i G_i over free multipliers, else midpoint of the
  // feasible interval implied by bounded ones.
  double upper = kInf;
  double lower = -kInf;
  double free_sum = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (is_upper(t)) {
      if (y[t] == -1) upper = std::min(upper, yg);
      else lower = std::max(lower, yg);
    } else if (is_lower(t)) {
      if (y[t] == 1) upper = std::min(upper, yg);
      else lower = std::max(lower, yg);
    } else {
      ++n_free;
      free_sum += yg;
    }
  }
  double rho;
  if (n_free > 0) rho = free_sum / static_cast<double>(n_free);
  else if (std::isfinite(upper) && std::isfinite(lower)) rho = 0.5 * (upper + lower);
  else rho = std::isfinite(upper) ? upper : lower;
  sol.bias = -rho;

  double obj = 0.0;
  for (std::size_t t = 0; t < n; ++t) obj += alpha[t] * (grad[t] - 1.0);
  sol.objective = -0.5 * obj;
  return sol;
}

SvmModel train(std::span<const FeatureVector> x, std::span<const int> y, const SvmConfig& cfg) {
  if (x.size() < 2) throw Error(Errc::SingleClass, "need at least two training samples");
  const DualSolution sol = solve_dual(x, y, cfg);
  SvmModel model;
  model.kernel = cfg.kernel;
  model.cost = cfg.cost;
  model.feature_dim = x.front().size();
  model.bias = sol.bias;
  model.converged = sol.converged;
  model.iterations = sol.iterations;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sol.alpha[i] > kSupportVectorThreshold) {
      model.support_vectors.push_back(x[i]);
      model.dual_coefs.push_back(sol.alpha[i] * y[i]);
    }
  }
  return model;
}

double decision_value(const SvmModel& model, std::span<const double> x) {
  if (x.size() != model.feature_dim) {
    throw Error(Errc::DimMismatch, "input has dimension " + std::to_string(x.size()) +
                                       ", model expects " + std::to_string(model.feature_dim));
  }
  double f = 0.0;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    f += model.dual_coefs[i] * kernel_eval(model.kernel, model.support_vectors[i], x);
  }
  return f + model.bias;
}

std::vector<double> decision_values(const SvmModel& model, std::span<const FeatureVector> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(decision_value(model, x));
  return out;
}

Label predict(const SvmModel& model, std::span<const double> x) {
  return label_for(decision_value(model, x));
}

}  // namespace vsd
