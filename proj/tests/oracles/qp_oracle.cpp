#include "qp_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace vsd::oracle {

namespace {

double dual_objective(const Eigen::MatrixXd& q, const Eigen::VectorXd& a) {
  return a.sum() - 0.5 * a.dot(q * a);
}

}  // namespace

QpSolution solve_svm_dual_exact(const std::vector<std::vector<double>>& kernel,
                                const std::vector<int>& y, double cost) {
  const int n = static_cast<int>(y.size());
  Eigen::MatrixXd q(n, n);
  Eigen::VectorXd yv(n);
  for (int i = 0; i < n; ++i) {
    yv(i) = y[i];
    for (int j = 0; j < n; ++j) q(i, j) = y[i] * y[j] * kernel[i][j];
  }
  const double feas_tol = 1e-10 * std::max(1.0, cost);

  QpSolution best;
  best.objective = -std::numeric_limits<double>::infinity();
  std::vector<int> state(n, 0);  // 0 lower, 1 upper, 2 free
  int faces = 1;
  for (int i = 0; i < n; ++i) faces *= 3;
  for (int face = 0; face < faces; ++face) {
    int code = face;
    std::vector<int> free_idx;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      state[i] = code % 3;
      code /= 3;
      if (state[i] == 1) a(i) = cost;
      if (state[i] == 2) free_idx.push_back(i);
    }
    const int f = static_cast<int>(free_idx.size());
    if (f == 0) {
      if (std::abs(yv.dot(a)) > feas_tol) continue;
    } else {
      // [Q_FF y_F; y_F' 0] [a_F; lambda] = [1 - Q_FB a_B; -y_B' a_B]
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(f + 1, f + 1);
      Eigen::VectorXd rhs(f + 1);
      const Eigen::VectorXd qa = q * a;
      for (int r = 0; r < f; ++r) {
        const int i = free_idx[r];
        for (int c = 0; c < f; ++c) m(r, c) = q(i, free_idx[c]);
        m(r, f) = yv(i);
        m(f, r) = yv(i);
        rhs(r) = 1.0 - qa(i);
      }
      rhs(f) = -yv.dot(a);
      const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
      const Eigen::VectorXd sol = cod.solve(rhs);
      if ((m * sol - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm())) continue;
      bool inside = true;
      for (int r = 0; r < f; ++r) {
        const double v = sol(r);
        if (v < -feas_tol || v > cost + feas_tol) inside = false;
        a(free_idx[r]) = std::clamp(v, 0.0, cost);
      }
      if (!inside) continue;
    }
    const double obj = dual_objective(q, a);
    if (obj > best.objective) {
      best.objective = obj;
      best.alpha.assign(a.data(), a.data() + n);
      best.found = true;
    }
  }
  if (!best.found) return best;

  // Bias from the KKT conditions: averaged over free multipliers, otherwise the
  // midpoint of the interval allowed by the bound multipliers.
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(best.alpha.data(), n);
  const Eigen::VectorXd grad = q * a - Eigen::VectorXd::Ones(n);
  const double bound_tol = 1e-9 * std::max(1.0, cost);
  double sum = 0.0;
  int n_free = 0;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double yg = yv(i) * grad(i);
    if (a(i) > bound_tol && a(i) < cost - bound_tol) {
      sum += yg;
      ++n_free;
    } else {
      const bool at_upper = a(i) >= cost - bound_tol;
      if ((at_upper && yv(i) < 0) || (!at_upper && yv(i) > 0)) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    }
  }
  double rho;
  if (n_free > 0) rho = sum / n_free;
  else if (std::isfinite(ub) && std::isfinite(lb)) rho = (ub + lb) / 2.0;
  else rho = std::isfinite(ub) ? ub : lb;
  best.bias = -rho;
  return best;
}

}  // namespace vsd::oracle
