#pragma once

// Difference weights of the discrete fractional operators.
//
//   Riesz (1D):     a_k  = (1/2pi) Int (4 sin^2(eta/2))^{alpha/2} e^{-ik eta} d eta
//   Laplacian (2D): a_ij = (1/4pi^2) IntInt (4 sin^2(eta/2) + 4 sin^2(xi/2))^{alpha/2}
//                           e^{-i(i eta + j xi)} d eta d xi
//
// Only the nonnegative-index quadrant is stored; the weights are even in
// every index. A scheme on N interior points per axis needs indices up to
// N-1 and nothing further: the zero exterior condition removes every other
// coupling exactly.

#include <cstddef>
#include <cstdlib>
#include <vector>

namespace fracwave {

/// Order of the fractional operator, 1 < alpha <= 2. alpha = 2 is the
/// classical Laplacian and is accepted for sanity checks.
class FracOrder {
public:
  explicit FracOrder(double alpha);
  double value() const noexcept { return alpha_; }
  operator double() const noexcept { return alpha_; }

private:
  double alpha_;
};

struct Coeffs1D {
  FracOrder alpha;
  std::vector<double> weights;  // weights[k] = a_k, k >= 0

  std::size_t count() const noexcept { return weights.size(); }
  double operator[](long k) const { return weights[static_cast<std::size_t>(std::labs(k))]; }
};

struct Coeffs2D {
  FracOrder alpha;
  std::size_t count = 0;
  std::vector<double> quadrant;  // row-major count x count, quadrant[i*count + j] = a_ij

  double at(long i, long j) const {
    return quadrant[static_cast<std::size_t>(std::labs(i)) * count +
                    static_cast<std::size_t>(std::labs(j))];
  }
};

/// Riesz weights a_0..a_{count-1} via a_{k+1} = a_k (k - alpha/2) / (k + 1 + alpha/2).
Coeffs1D riesz_coeffs_1d(FracOrder alpha, std::size_t count);

/// a_0 = Gamma(alpha+1) / Gamma(alpha/2+1)^2.
double riesz_center_weight(FracOrder alpha);

struct LaplacianCoeffOptions {
  std::size_t oversampling = 8;
  /// Lower bound on the sampling resolution M; keeps the aliasing error of
  /// small tables below 1e-9.
  std::size_t min_samples = 1024;
  /// Largest allowed work array (the (M/2+1)^2 cosine-transform table).
  std::size_t memory_budget_bytes = std::size_t{2} << 30;
};

/// Sampling resolution used by laplacian_coeffs_2d: the smallest power of
/// two >= max(oversampling * count, min_samples).
std::size_t laplacian_sampling_size(std::size_t count, const LaplacianCoeffOptions& opts = {});

/// 2D fractional-Laplacian weights from the discrete Fourier coefficients of
/// the sampled symbol (one 2D cosine transform of the even quarter table).
Coeffs2D laplacian_coeffs_2d(FracOrder alpha, std::size_t count,
                             const LaplacianCoeffOptions& opts = {});

/// Cross-shaped table of delta_x + delta_y: a~_00 = 2 a_0, a~_0j = a_j,
/// a~_i0 = a_i, zero elsewhere.
Coeffs2D riesz_sum_coeffs_2d(FracOrder alpha, std::size_t count);

/// Direct evaluation of a_ij by adaptive 2D Gauss-Kronrod cubature of the
/// defining integral, to absolute accuracy tol. Meant for small |i|, |j|.
/// Throws ConvergenceError if the evaluation budget runs out first.
double coeff_quadrature_oracle(FracOrder alpha, long i, long j, double tol = 1e-10,
                               std::size_t max_evaluations = 50'000'000);

}  // namespace fracwave
