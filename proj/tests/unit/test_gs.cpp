#include <gtest/gtest.h>

#include <random>

#include "dense.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/fraccoef.hpp"
#include "fracwave/tau.hpp"
#include "fracwave/toeplitz.hpp"

using namespace fracwave;

TEST(GohbergSemencul, RandomSpdMatchesDenseSolve) {
  std::mt19937_64 rng(2024);
  for (std::size_t n : {5u, 32u, 128u}) {
    for (int trial = 0; trial < 10; ++trial) {
      SymToeplitz h{oracle::random_spd_toeplitz(n, rng)};
      auto gs = gs_precompute(h, 1e-14, nullptr, 10 * int(n));
      Eigen::MatrixXd m = oracle::dense_toeplitz(h.first_col);
      auto v = oracle::random_vector(n, rng);
      Eigen::VectorXd ref = m.ldlt().solve(oracle::to_vec(v));
      auto x = gs_solve(gs, v);
      EXPECT_LT(oracle::rel_err(oracle::to_vec(x), ref), 1e-9) << n << " trial " << trial;
    }
  }
}

TEST(GohbergSemencul, NonSmoothOrdersUseSmoothEmbedding) {
  // 11, 53 and 159 have prime factors above 7.
  std::mt19937_64 rng(77);
  for (std::size_t n : {11u, 53u, 159u, 160u}) {
    SymToeplitz h{oracle::random_spd_toeplitz(n, rng)};
    auto gs = gs_precompute(h, 1e-14, nullptr, 10 * int(n));
    EXPECT_EQ(gs.embed_size != 0, n != 160u);
    if (gs.embed_size) EXPECT_EQ(gs.embed_size, fft::next_smooth_size(2 * n - 1));
    auto v = oracle::random_vector(n, rng);
    Eigen::VectorXd ref = oracle::dense_toeplitz(h.first_col).ldlt().solve(oracle::to_vec(v));
    fft::reset_transform_count();
    auto x = gs_solve(gs, v);
    EXPECT_EQ(fft::transform_count(), 4u);
    EXPECT_LT(oracle::rel_err(oracle::to_vec(x), ref), 1e-9) << n;
  }
}

TEST(GohbergSemencul, ExactlyFourTransformsPerSolve) {
  std::mt19937_64 rng(5);
  SymToeplitz h{oracle::random_spd_toeplitz(32, rng)};
  auto gs = gs_precompute(h, 1e-14, nullptr, 500);
  GsWorkspace ws;
  std::vector<double> v = oracle::random_vector(32, rng), out(32);
  for (int k = 0; k < 7; ++k) {
    fft::reset_transform_count();
    gs_solve(gs, v, out, ws);
    EXPECT_EQ(fft::transform_count(), 4u);
  }
}

TEST(GohbergSemencul, InPlaceAliasing) {
  std::mt19937_64 rng(6);
  SymToeplitz h{oracle::random_spd_toeplitz(17, rng)};
  auto gs = gs_precompute(h, 1e-14, nullptr, 500);
  auto v = oracle::random_vector(17, rng);
  auto ref = gs_solve(gs, v);
  GsWorkspace ws;
  gs_solve(gs, v, v, ws);
  for (std::size_t k = 0; k < 17; ++k) EXPECT_DOUBLE_EQ(v[k], ref[k]);
}

TEST(GohbergSemencul, FromKnownInverseColumn) {
  std::mt19937_64 rng(8);
  auto col = oracle::random_spd_toeplitz(9, rng);
  Eigen::MatrixXd m = oracle::dense_toeplitz(col);
  Eigen::MatrixXd inv = m.inverse();
  std::vector<double> c(9);
  for (int k = 0; k < 9; ++k) c[k] = inv(k, 0);
  auto gs = gs_from_inverse_column(c);
  auto v = oracle::random_vector(9, rng);
  Eigen::VectorXd ref = inv * oracle::to_vec(v);
  EXPECT_LT(oracle::rel_err(oracle::to_vec(gs_solve(gs, v)), ref), 1e-12);
  EXPECT_THROW(gs_from_inverse_column(std::vector<double>{-1.0, 0.2}), ValidationError);
}

TEST(GohbergSemencul, TauPreconditionedPrecompute) {
  // The actual matrices of the scheme: I + c h^-alpha T(a), N = 400.
  for (double alpha : {1.1, 1.5, 1.9}) {
    const std::size_t n = 400;
    const double factor = 0.5 * 0.01 * 0.01 * std::pow(1.0 / 20, -alpha);
    auto a = riesz_coeffs_1d(FracOrder(alpha), n);
    SymToeplitz h{a.weights};
    for (auto& x : h.first_col) x *= factor;
    h.first_col[0] += 1.0;
    TauSpec1D tau(FracOrder(alpha), n, factor);
    auto gs = gs_precompute(h, 1e-13, &tau, 200);
    EXPECT_TRUE(gs.precompute_report.converged);
    EXPECT_LE(gs.precompute_report.iterations, 30);
    std::mt19937_64 rng(1);
    auto v = oracle::random_vector(n, rng);
    auto x = gs_solve(gs, v);
    auto back = toeplitz_matvec(h.first_col, x);
    double err = 0, nv = 0;
    for (std::size_t k = 0; k < n; ++k) err += (back[k] - v[k]) * (back[k] - v[k]), nv += v[k] * v[k];
    EXPECT_LT(std::sqrt(err / nv), 1e-11) << alpha;
  }
}

TEST(GohbergSemencul, StalledPrecomputeThrows) {
  std::mt19937_64 rng(3);
  SymToeplitz h{oracle::random_spd_toeplitz(64, rng)};
  EXPECT_THROW(gs_precompute(h, 1e-15, nullptr, 2), ConvergenceError);
}
