#pragma once

// Dense reference constructions for small problems (test tree only).
// Field (i, j) maps to vector index j * n + i, matching Field storage.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fracwave/field.hpp"
#include "fracwave/fraccoef.hpp"

namespace fracwave::oracle {

inline Eigen::VectorXd to_vec(const Field& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k) v[static_cast<Eigen::Index>(k)] = f.values()[k];
  return v;
}

inline Field to_field(const Eigen::VectorXd& v, std::size_t n) {
  Field f(n);
  for (std::size_t k = 0; k < f.size(); ++k) f.values()[k] = v[static_cast<Eigen::Index>(k)];
  return f;
}

inline Eigen::VectorXd to_vec(const std::vector<double>& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

inline Eigen::MatrixXd dense_toeplitz(const std::vector<double>& first_col) {
  const auto n = static_cast<Eigen::Index>(first_col.size());
  Eigen::MatrixXd t(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = first_col[static_cast<std::size_t>(std::abs(i - j))];
  return t;
}

/// Circulant with first column c: C_ij = c_{(i-j) mod n}.
inline Eigen::MatrixXcd dense_circulant(const std::vector<std::complex<double>>& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = c[static_cast<std::size_t>(((i - j) % n + n) % n)];
  return m;
}

/// Skew-circulant with first column s: S_ij = s_{i-j} for i >= j, -s_{n+i-j} otherwise.
inline Eigen::MatrixXcd dense_skew_circulant(const std::vector<std::complex<double>>& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = i >= j ? s[static_cast<std::size_t>(i - j)] : -s[static_cast<std::size_t>(n + i - j)];
  return m;
}

/// (L u)_{ij} = scale * sum a_{|i-p|,|j-q|} u_{pq}, assembled entrywise.
inline Eigen::MatrixXd dense_bttb(const Coeffs2D& c, std::size_t n, double scale) {
  const auto nn = static_cast<Eigen::Index>(n * n);
  Eigen::MatrixXd m(nn, nn);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t p = 0; p < n; ++p)
          m(static_cast<Eigen::Index>(j * n + i), static_cast<Eigen::Index>(q * n + p)) =
              scale * c.at(static_cast<long>(i) - static_cast<long>(p),
                           static_cast<long>(j) - static_cast<long>(q));
  return m;
}

/// delta_x, delta_y and L_h on an n x n grid with spacing h, as dense n^2 x n^2 matrices.
struct DenseOperators {
  Eigen::MatrixXd dx, dy, lap;
};

inline DenseOperators dense_operators(FracOrder alpha, std::size_t n, double h, const Coeffs2D& lap_coeffs) {
  const double s = std::pow(h, -alpha.value());
  const auto a = riesz_coeffs_1d(alpha, n);
  Eigen::MatrixXd t = s * dense_toeplitz(a.weights);
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  DenseOperators ops;
  // x index is fastest: vec = sum_j e_j (x) line_j, so delta_x = I_y (x) T, delta_y = T (x) I_x.
  ops.dx = Eigen::kroneckerProduct(id, t);
  ops.dy = Eigen::kroneckerProduct(t, id);
  ops.lap = dense_bttb(lap_coeffs, n, s);
  return ops;
}

inline Field random_field(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Field f(n);
  for (double& v : f.values()) v = dist(rng);
  return f;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

/// Random SPD Toeplitz first column: decaying off-diagonals, dominant diagonal.
inline std::vector<double> random_spd_toeplitz(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> c(n);
  double off = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = dist(rng) / (1.0 + static_cast<double>(k));
    off += std::abs(c[k]);
  }
  c[0] = 2.0 * off * std::uniform_real_distribution<double>(0.55, 1.5)(rng) + 0.1;
  return c;
}

inline double rel_err(const Eigen::VectorXd& x, const Eigen::VectorXd& ref) {
  return (x - ref).norm() / ref.norm();
}

}  // namespace fracwave::oracle
