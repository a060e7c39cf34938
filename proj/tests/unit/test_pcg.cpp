#include <gtest/gtest.h>

#include <random>

#include "dense.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/pcg.hpp"

using namespace fracwave;

namespace {

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1, 1);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = d(rng);
  return g * g.transpose() + n * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST(Pcg, SolvesDenseSpd) {
  std::mt19937_64 rng(1);
  const int n = 40;
  Eigen::MatrixXd a = random_spd(n, rng);
  auto b = oracle::random_vector(n, rng);
  std::vector<double> x(n, 0.0);
  auto apply = [&](std::span<const double> in, std::span<double> out) {
    Eigen::Map<Eigen::VectorXd>(out.data(), n) = a * Eigen::Map<const Eigen::VectorXd>(in.data(), n);
  };
  auto rep = pcg(apply, NoPreconditioner{}, b, x, 1e-12, 200);
  ASSERT_TRUE(rep.converged);
  EXPECT_LE(rep.final_relative_residual, 1e-12);
  Eigen::VectorXd ref = a.ldlt().solve(oracle::to_vec(b));
  EXPECT_LT(oracle::rel_err(oracle::to_vec(x), ref), 1e-10);
}

TEST(Pcg, JacobiPreconditionerHelpsBadScaling) {
  std::mt19937_64 rng(2);
  const int n = 60;
  Eigen::MatrixXd a = random_spd(n, rng);
  Eigen::VectorXd s(n);
  for (int k = 0; k < n; ++k) s[k] = std::pow(10.0, 3.0 * k / n);
  a = s.asDiagonal() * a * s.asDiagonal();
  auto apply = [&](std::span<const double> in, std::span<double> out) {
    Eigen::Map<Eigen::VectorXd>(out.data(), n) = a * Eigen::Map<const Eigen::VectorXd>(in.data(), n);
  };
  auto jacobi = [&](std::span<double> v) {
    for (int k = 0; k < n; ++k) v[k] /= a(k, k);
  };
  auto b = oracle::random_vector(n, rng);
  std::vector<double> x1(n, 0.0), x2(n, 0.0);
  auto plain = pcg(apply, NoPreconditioner{}, b, x1, 1e-10, 5000);
  auto pre = pcg(apply, jacobi, b, x2, 1e-10, 5000);
  EXPECT_TRUE(pre.converged);
  EXPECT_LT(pre.iterations, plain.iterations);
}

TEST(Pcg, ZeroRightHandSideGivesZero) {
  std::vector<double> b(5, 0.0), x(5, 3.0);
  auto rep = pcg([](std::span<const double> in, std::span<double> out) { std::copy(in.begin(), in.end(), out.begin()); },
                 NoPreconditioner{}, b, x, 1e-10, 10);
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.iterations, 0);
  for (double v : x) EXPECT_EQ(v, 0.0);
}

TEST(Pcg, ExactInitialGuessTakesNoIterations) {
  std::vector<double> b{1, 2, 3}, x{0.5, 1, 1.5};
  auto rep = pcg([](std::span<const double> in, std::span<double> out) {
    for (std::size_t k = 0; k < 3; ++k) out[k] = 2 * in[k];
  }, NoPreconditioner{}, b, x, 1e-12, 10);
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.iterations, 0);
}

TEST(Pcg, ReportsNonConvergence) {
  std::mt19937_64 rng(3);
  const int n = 50;
  Eigen::MatrixXd a = random_spd(n, rng);
  auto apply = [&](std::span<const double> in, std::span<double> out) {
    Eigen::Map<Eigen::VectorXd>(out.data(), n) = a * Eigen::Map<const Eigen::VectorXd>(in.data(), n);
  };
  auto b = oracle::random_vector(n, rng);
  std::vector<double> x(n, 0.0);
  auto rep = pcg(apply, NoPreconditioner{}, b, x, 1e-14, 2);
  EXPECT_FALSE(rep.converged);
  EXPECT_EQ(rep.iterations, 2);
}

TEST(Pcg, InvalidArguments) {
  std::vector<double> b(3, 1.0), x(2, 0.0), y(3, 0.0);
  auto id = [](std::span<const double> in, std::span<double> out) { std::copy(in.begin(), in.end(), out.begin()); };
  EXPECT_THROW(pcg(id, NoPreconditioner{}, b, x, 1e-8, 5), ValidationError);
  EXPECT_THROW(pcg(id, NoPreconditioner{}, b, y, 0.0, 5), ValidationError);
}
