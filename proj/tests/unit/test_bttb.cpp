#include <gtest/gtest.h>

#include <random>

#include "dense.hpp"
#include "fracwave/bttb.hpp"
#include "fracwave/fraccoef.hpp"

using namespace fracwave;

TEST(Bttb, MatchesDenseAssembly) {
  std::mt19937_64 rng(4);
  for (std::size_t n : {1u, 3u, 8u, 13u}) {
    auto c = laplacian_coeffs_2d(FracOrder(1.3), n);
    BttbOperator op(c, n, 0.7);
    EXPECT_GE(op.embedding_size(), 2 * n - 1);
    Field u = oracle::random_field(n, rng);
    Eigen::VectorXd ref = oracle::dense_bttb(c, n, 0.7) * oracle::to_vec(u);
    EXPECT_LT(oracle::rel_err(oracle::to_vec(op.apply(u)), ref), 1e-13) << n;
  }
}

TEST(Bttb, NonSymmetricLookingFieldUsesCorrectAxes) {
  // Cross-shaped kernel with distinct x and y arms would expose a transposition.
  const std::size_t n = 6;
  Coeffs2D c{FracOrder(1.5), n, std::vector<double>(n * n, 0.0)};
  c.quadrant[0] = 1.0;
  c.quadrant[1 * n + 0] = 0.25;  // a_{1,0}: couples x-neighbours
  BttbOperator op(c, n, 1.0);
  Field u(n);
  u(2, 3) = 1.0;
  Field y = op.apply(u);
  EXPECT_NEAR(y(2, 3), 1.0, 1e-14);
  EXPECT_NEAR(y(1, 3), 0.25, 1e-14);
  EXPECT_NEAR(y(3, 3), 0.25, 1e-14);
  EXPECT_NEAR(y(2, 2), 0.0, 1e-14);
}

TEST(Bttb, LargerCoefficientTableIsTruncated) {
  std::mt19937_64 rng(5);
  auto c = laplacian_coeffs_2d(FracOrder(1.8), 20);
  BttbOperator op(c, 10, 1.0);
  Field u = oracle::random_field(10, rng);
  Eigen::VectorXd ref = oracle::dense_bttb(c, 10, 1.0) * oracle::to_vec(u);
  EXPECT_LT(oracle::rel_err(oracle::to_vec(op.apply(u)), ref), 1e-13);
}

TEST(Bttb, PositiveDefiniteOnRandomFields) {
  std::mt19937_64 rng(6);
  auto c = laplacian_coeffs_2d(FracOrder(1.1), 24);
  BttbOperator op(c, 24, 1.0);
  for (int k = 0; k < 20; ++k) {
    Field u = oracle::random_field(24, rng);
    Field y = op.apply(u);
    double s = 0;
    for (std::size_t m = 0; m < u.size(); ++m) s += u.values()[m] * y.values()[m];
    EXPECT_GT(s, 0.0);
  }
}

TEST(Bttb, TooFewCoefficientsThrow) {
  auto c = laplacian_coeffs_2d(FracOrder(1.5), 4);
  EXPECT_ANY_THROW(BttbOperator(c, 5, 1.0));
}
