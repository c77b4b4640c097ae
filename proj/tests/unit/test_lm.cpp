#include <gtest/gtest.h>

#include <cmath>

#include "kipa/fit/levenberg_marquardt.hpp"

namespace kipa::fit {
namespace {

TEST(LevenbergMarquardt, Rosenbrock) {
  const ResidualFn fn = [](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    r(0) = 10.0 * (p(1) - p(0) * p(0));
    r(1) = 1.0 - p(0);
  };
  const auto res = levenberg_marquardt(fn, 2, Eigen::Vector2d(-1.2, 1.0), Eigen::Vector2d(1.0, 1.0));
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.params(0), 1.0, 1e-8);
  EXPECT_NEAR(res.params(1), 1.0, 1e-8);
  EXPECT_LT(res.rss, 1e-20);
}

TEST(LevenbergMarquardt, LinearModelCovariance) {
  // y = a + b x with known residual scale: covariance equals s^2 (X^T X)^-1.
  const int m = 50;
  Eigen::VectorXd x(m), y(m);
  for (int i = 0; i < m; ++i) {
    x(i) = i;
    y(i) = 2.0 + 0.5 * i + ((i % 2) ? 0.1 : -0.1);
  }
  const ResidualFn fn = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    r = (p(0) + p(1) * x.array() - y.array()).matrix();
  };
  const auto res = levenberg_marquardt(fn, m, Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 1.0));
  Eigen::MatrixXd X(m, 2);
  X.col(0).setOnes();
  X.col(1) = x;
  const Eigen::Vector2d ls = X.colPivHouseholderQr().solve(y);
  EXPECT_NEAR(res.params(0), ls(0), 1e-8);
  EXPECT_NEAR(res.params(1), ls(1), 1e-9);
  const Eigen::MatrixXd cov = (X.transpose() * X).inverse() * (res.rss / (m - 2));
  EXPECT_NEAR(res.sigma(0), std::sqrt(cov(0, 0)), 1e-6 * std::sqrt(cov(0, 0)));
  EXPECT_NEAR(res.sigma(1), std::sqrt(cov(1, 1)), 1e-6 * std::sqrt(cov(1, 1)));
  EXPECT_EQ(res.rank, 2);
}

TEST(LevenbergMarquardt, UnidentifiableDirectionHasInfiniteSigma) {
  const ResidualFn fn = [](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < 5; ++i) r(i) = (p(0) + p(1)) - 3.0 + 0.01 * i;
  };
  const auto res = levenberg_marquardt(fn, 5, Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 1.0));
  EXPECT_EQ(res.rank, 1);
  EXPECT_TRUE(std::isinf(res.sigma(0)));
  EXPECT_TRUE(std::isinf(res.sigma(1)));
}

TEST(LevenbergMarquardt, RejectsNonFiniteTrialPoints) {
  // log(p) is undefined for p <= 0; the optimizer must back off.
  const ResidualFn fn = [](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    r(0) = std::log(p(0)) - std::log(0.01);
    r(1) = 0.0;
  };
  const auto res = levenberg_marquardt(fn, 2, Eigen::VectorXd::Constant(1, 5.0), Eigen::VectorXd::Constant(1, 1.0));
  EXPECT_NEAR(res.params(0), 0.01, 1e-8);
}

TEST(LevenbergMarquardt, IterationCap) {
  const ResidualFn fn = [](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    r(0) = 10.0 * (p(1) - p(0) * p(0));
    r(1) = 1.0 - p(0);
  };
  LmOptions opts;
  opts.max_iterations = 2;
  const auto res = levenberg_marquardt(fn, 2, Eigen::Vector2d(-1.2, 1.0), Eigen::Vector2d(1.0, 1.0), opts);
  EXPECT_FALSE(res.converged);
  EXPECT_LE(res.iterations, 2);
}

}  // namespace
}  // namespace kipa::fit
