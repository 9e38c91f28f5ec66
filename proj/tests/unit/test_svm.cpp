#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "qp_oracle.hpp"
#include "test_helpers.hpp"
#include "vsd/svm.hpp"

using namespace vsd;
using vsd::testing::error_code_of;

namespace {

SvmConfig config(KernelSpec k, double cost, double tol = 1e-3) {
  SvmConfig c;
  c.kernel = k;
  c.cost = cost;
  c.tolerance = tol;
  return c;
}

std::vector<std::vector<double>> gram(const KernelSpec& k, const std::vector<FeatureVector>& x) {
  std::vector<std::vector<double>> g(x.size(), std::vector<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) g[i][j] = kernel_eval(k, x[i], x[j]);
  }
  return g;
}

}  // namespace

TEST(Kernel, RbfAtZeroDistanceIsOne) {
  const FeatureVector x{0.3, -2.0};
  EXPECT_EQ(kernel_eval(KernelSpec::rbf(7.0), x, x), 1.0);
}

TEST(Kernel, PolyOrthogonalGivesCoefPower) {
  EXPECT_EQ(kernel_eval(KernelSpec::poly(4, 1.0, 1.0), FeatureVector{1, 0}, FeatureVector{0, 1}), 1.0);
}

TEST(Kernel, RbfHandValue) {
  EXPECT_NEAR(kernel_eval(KernelSpec::rbf(0.1), FeatureVector{1, 0}, FeatureVector{0, 0}),
              0.904837418035960, 1e-12);
}

TEST(Kernel, PolyAndLinearFormulas) {
  const FeatureVector x{1, 2}, y{3, -1};
  EXPECT_EQ(kernel_eval(KernelSpec::linear(), x, y), 1.0);
  EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::poly(3, 0.5, 2.0), x, y), 15.625);
}

TEST(Kernel, DimMismatch) {
  EXPECT_EQ(error_code_of([] {
              kernel_eval(KernelSpec::linear(), FeatureVector{1}, FeatureVector{1, 2});
            }),
            Errc::DimMismatch);
}

TEST(Kernel, ValidateRejectsBadParameters) {
  EXPECT_EQ(error_code_of([] { KernelSpec::rbf(0.0).validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(error_code_of([] { KernelSpec::poly(0, 1.0, 1.0).validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(error_code_of([] { KernelSpec::rbf(NAN).validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(parse_kernel_kind("rbf"), KernelSpec::Kind::Rbf);
  EXPECT_FALSE(parse_kernel_kind("sigmoid").has_value());
}

TEST(Svm, SymmetricTwoPointProblem) {
  const std::vector<FeatureVector> x{{-1}, {1}};
  const std::vector<int> y{-1, 1};
  const auto m = train(x, y, config(KernelSpec::linear(), 10.0));
  EXPECT_EQ(m.support_vectors.size(), 2u);
  EXPECT_NEAR(decision_value(m, FeatureVector{0}), 0.0, 1e-12);
  EXPECT_EQ(predict(m, FeatureVector{-1}), Label::Benign);
  EXPECT_EQ(predict(m, FeatureVector{1}), Label::Violent);
  EXPECT_NEAR(decision_value(m, FeatureVector{1}), 1.0, 1e-9);
}

TEST(Svm, XorWithRbf) {
  const std::vector<FeatureVector> x{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  const std::vector<int> y{-1, -1, 1, 1};
  const auto cfg = config(KernelSpec::rbf(1.0), 10.0, 1e-10);
  const auto m = train(x, y, cfg);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(label_sign(predict(m, x[i])), y[i]) << i;
  }
  const auto oracle = oracle::solve_svm_dual_exact(gram(cfg.kernel, x), y, cfg.cost);
  ASSERT_TRUE(oracle.found);
  EXPECT_NEAR(solve_dual(x, y, cfg).objective, oracle.objective, 1e-6);
}

TEST(Svm, FreeSupportVectorSitsOnMargin) {
  const std::vector<FeatureVector> x{{0, 0}, {0.2, 1.0}, {2, 2}, {2.5, 1.0}, {-1, 0.5}};
  const std::vector<int> y{-1, -1, 1, 1, -1};
  const auto cfg = config(KernelSpec::linear(), 100.0, 1e-9);
  const auto sol = solve_dual(x, y, cfg);
  const auto m = train(x, y, cfg);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sol.alpha[i] > 1e-6 && sol.alpha[i] < cfg.cost - 1e-6) {
      EXPECT_NEAR(decision_value(m, x[i]), y[i], 1e-6) << i;
    }
  }
}

TEST(Svm, DualConstraintsHold) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<FeatureVector> x;
  std::vector<int> y;
  for (int i = 0; i < 60; ++i) {
    const int label = i % 3 == 0 ? 1 : -1;
    x.push_back({n(gen) + label, n(gen)});
    y.push_back(label);
  }
  const auto cfg = config(KernelSpec::rbf(0.5), 5.0);
  const auto sol = solve_dual(x, y, cfg);
  EXPECT_TRUE(sol.converged);
  double balance = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_GE(sol.alpha[i], 0.0);
    EXPECT_LE(sol.alpha[i], cfg.cost);
    balance += sol.alpha[i] * y[i];
  }
  EXPECT_NEAR(balance, 0.0, 1e-8);

  const auto m = train(x, y, cfg);
  EXPECT_EQ(m.support_vectors.size(), m.dual_coefs.size());
  for (double c : m.dual_coefs) EXPECT_LE(std::abs(c), cfg.cost);
  const auto batch = decision_values(m, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(label_for(batch[i]), predict(m, x[i]));
  }
}

TEST(Svm, MatchesExactOracleOnSmallProblems) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FeatureVector> x;
    std::vector<int> y;
    for (int i = 0; i < 6; ++i) {
      x.push_back({u(gen), u(gen)});
      y.push_back(i % 2 ? 1 : -1);
    }
    const auto cfg = config(KernelSpec::poly(4, 1.0, 1.0), 10.0, 1e-10);
    const auto oracle = oracle::solve_svm_dual_exact(gram(cfg.kernel, x), y, cfg.cost);
    ASSERT_TRUE(oracle.found);
    EXPECT_NEAR(solve_dual(x, y, cfg).objective, oracle.objective, 1e-6) << trial;
  }
}

TEST(Svm, IterationCapReportsNotConverged) {
  std::vector<FeatureVector> x;
  std::vector<int> y;
  for (int i = 0; i < 40; ++i) {
    x.push_back({std::sin(i * 1.7), std::cos(i * 0.3)});
    y.push_back(i % 2 ? 1 : -1);
  }
  auto cfg = config(KernelSpec::rbf(2.0), 100.0);
  cfg.max_iterations = 3;
  const auto m = train(x, y, cfg);
  EXPECT_FALSE(m.converged);
  EXPECT_EQ(m.iterations, 3u);
}

TEST(Svm, SingleClassAndDimErrors) {
  const std::vector<FeatureVector> x{{0}, {1}};
  EXPECT_EQ(error_code_of([&] { train(x, std::vector<int>{1, 1}, config(KernelSpec::linear(), 1)); }),
            Errc::SingleClass);
  const std::vector<FeatureVector> ragged{{0}, {1, 2}};
  EXPECT_EQ(error_code_of([&] {
              train(ragged, std::vector<int>{1, -1}, config(KernelSpec::linear(), 1));
            }),
            Errc::DimMismatch);
  const auto m = train(x, std::vector<int>{-1, 1}, config(KernelSpec::linear(), 1));
  EXPECT_EQ(error_code_of([&] { decision_value(m, FeatureVector{1, 2}); }), Errc::DimMismatch);
}

TEST(Svm, DecisionTieGoesToViolent) {
  EXPECT_EQ(label_for(2.3), Label::Violent);
  EXPECT_EQ(label_for(-0.1), Label::Benign);
  EXPECT_EQ(label_for(0.0), Label::Violent);
}
