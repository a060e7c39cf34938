#include "fracwave/fraccoef.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracwave/errors.hpp"
#include "fracwave/fft.hpp"

namespace fracwave {

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw ValidationError("fractional order must lie in (1, 2], got " + std::to_string(alpha));
}

double riesz_center_weight(FracOrder alpha) {
  const double g = std::tgamma(alpha / 2.0 + 1.0);
  return std::tgamma(alpha + 1.0) / (g * g);
}

Coeffs1D riesz_coeffs_1d(FracOrder alpha, std::size_t count) {
  if (count < 1) throw ValidationError("riesz_coeffs_1d: count must be >= 1");
  Coeffs1D out{alpha, std::vector<double>(count)};
  const double half = alpha / 2.0;
  out.weights[0] = riesz_center_weight(alpha);
  for (std::size_t k = 0; k + 1 < count; ++k) {
    const double kd = static_cast<double>(k);
    out.weights[k + 1] = out.weights[k] * (kd - half) / (kd + 1.0 + half);
  }
  return out;
}

std::size_t laplacian_sampling_size(std::size_t count, const LaplacianCoeffOptions& opts) {
  std::size_t target = std::max(opts.oversampling * count, opts.min_samples);
  std::size_t m = 2;
  while (m < target) m <<= 1;
  return m;
}

Coeffs2D laplacian_coeffs_2d(FracOrder alpha, std::size_t count,
                             const LaplacianCoeffOptions& opts) {
  if (count < 1) throw ValidationError("laplacian_coeffs_2d: count must be >= 1");
  if (opts.oversampling < 2) throw ValidationError("laplacian_coeffs_2d: oversampling must be >= 2");

  const std::size_t m = laplacian_sampling_size(count, opts);
  const std::size_t n = m / 2 + 1;  // samples on [0, pi] per axis
  const double bytes = static_cast<double>(n) * static_cast<double>(n) * sizeof(double);
  if (bytes > static_cast<double>(opts.memory_budget_bytes))
    throw ValidationError("laplacian_coeffs_2d: sampling grid " + std::to_string(m) + "^2 for " +
                          std::to_string(count) + " coefficients exceeds the memory budget");

  // 4 sin^2(eta_k / 2) at eta_k = 2 pi k / m.
  std::vector<double> s1(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sh = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    s1[k] = 4.0 * sh * sh;
  }

  const double half = alpha / 2.0;
  std::vector<double> table(n * n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    for (std::size_t l = static_cast<std::size_t>(k); l < n; ++l) {
      const double v = std::pow(s1[static_cast<std::size_t>(k)] + s1[l], half);
      table[static_cast<std::size_t>(k) * n + l] = v;
      table[l * n + static_cast<std::size_t>(k)] = v;
    }
  }

  // DCT-I over the quarter table equals the full m x m DFT of the even
  // sample array; the symbol is real and even so no imaginary part arises.
  fft::cosine_transform_2d(table, n);

  Coeffs2D out{alpha, count, std::vector<double>(count * count)};
  const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
  // The transform is symmetric only up to rounding; average so that a_ij == a_ji exactly.
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      out.quadrant[i * count + j] = 0.5 * (table[i * n + j] + table[j * n + i]) * scale;
  return out;
}

Coeffs2D riesz_sum_coeffs_2d(FracOrder alpha, std::size_t count) {
  const Coeffs1D a = riesz_coeffs_1d(alpha, count);
  Coeffs2D out{alpha, count, std::vector<double>(count * count, 0.0)};
  out.quadrant[0] = 2.0 * a.weights[0];
  for (std::size_t k = 1; k < count; ++k) {
    out.quadrant[k] = a.weights[k];          // (0, k)
    out.quadrant[k * count] = a.weights[k];  // (k, 0)
  }
  return out;
}

}  // namespace fracwave
