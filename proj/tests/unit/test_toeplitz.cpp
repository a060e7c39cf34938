#include <gtest/gtest.h>

#include <random>

#include "dense.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/toeplitz.hpp"

using namespace fracwave;

TEST(Toeplitz, MatvecMatchesDense) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {1u, 2u, 7u, 64u, 129u}) {
    auto col = oracle::random_vector(n, rng);
    auto v = oracle::random_vector(n, rng);
    auto y = toeplitz_matvec(col, v);
    Eigen::VectorXd ref = oracle::dense_toeplitz(col) * oracle::to_vec(v);
    EXPECT_LT((oracle::to_vec(y) - ref).norm(), 1e-13 * (1 + ref.norm())) << n;
  }
}

TEST(Toeplitz, OperatorReusableAndOutOfPlace) {
  std::mt19937_64 rng(22);
  auto col = oracle::random_vector(20, rng);
  ToeplitzOperator t(col);
  EXPECT_EQ(t.size(), 20u);
  auto m = oracle::dense_toeplitz(col);
  for (int rep = 0; rep < 3; ++rep) {
    auto v = oracle::random_vector(20, rng);
    std::vector<double> out(20);
    t.apply(v, out);
    EXPECT_LT((oracle::to_vec(out) - m * oracle::to_vec(v)).norm(), 1e-13);
  }
}

TEST(Toeplitz, LengthMismatchThrows) {
  ToeplitzOperator t(std::vector<double>{2.0, -1.0, 0.0});
  std::vector<double> v(4), out(4);
  EXPECT_ANY_THROW(t.apply(v, out));
}
