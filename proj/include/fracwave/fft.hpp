#pragma once

// Thin RAII layer over FFTW.
//
// Conventions used throughout the project:
//   forward transform   X_k = sum_j x_j exp(-2 pi i jk / n)   (unnormalized)
//   inverse transform   x_j = (1/n) sum_k X_k exp(+2 pi i jk / n)
//
// Plans are created with FFTW_ESTIMATE so that the chosen algorithm, and
// hence every rounding, is identical from run to run. Plan creation is
// serialized internally; executing a plan is safe from any thread.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace fracwave::fft {

using cplx = std::complex<double>;

/// Number of 1D complex transforms executed by Plan1D since the last reset
/// (process wide). Used by tests to pin transform budgets.
std::uint64_t transform_count() noexcept;
void reset_transform_count() noexcept;

/// In-place complex transform of fixed length.
class Plan1D {
public:
  explicit Plan1D(std::size_t n);
  ~Plan1D();
  Plan1D(const Plan1D&) = delete;
  Plan1D& operator=(const Plan1D&) = delete;

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<cplx> data) const;
  /// Includes the 1/n factor.
  void inverse(std::span<cplx> data) const;
  /// Inverse without the 1/n factor.
  void backward(std::span<cplx> data) const;

private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

/// Real-to-complex / complex-to-real pair on a rows x cols array stored
/// row-major. The half spectrum has rows x (cols/2 + 1) entries.
class RealPlan2D {
public:
  RealPlan2D(std::size_t rows, std::size_t cols);
  ~RealPlan2D();
  RealPlan2D(const RealPlan2D&) = delete;
  RealPlan2D& operator=(const RealPlan2D&) = delete;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t spectrum_size() const noexcept { return rows_ * (cols_ / 2 + 1); }

  /// spectrum = F(real), unnormalized.
  void forward(std::span<const double> real, std::span<cplx> spectrum) const;
  /// real = F^{-1}(spectrum) including 1/(rows*cols). Destroys spectrum.
  void inverse(std::span<cplx> spectrum, std::span<double> real) const;

private:
  struct Impl;
  std::size_t rows_, cols_;
  std::unique_ptr<Impl> impl_;
};

/// Orthonormal DST-I (self-inverse) on vectors of length n, or on n x n
/// arrays (tensor transform) when constructed with two_dimensional = true.
class SinePlan {
public:
  explicit SinePlan(std::size_t n, bool two_dimensional = false);
  ~SinePlan();
  SinePlan(const SinePlan&) = delete;
  SinePlan& operator=(const SinePlan&) = delete;

  std::size_t size() const noexcept { return n_; }
  bool two_dimensional() const noexcept { return two_d_; }
  void apply(std::span<double> data) const;

private:
  struct Impl;
  std::size_t n_;
  bool two_d_;
  std::unique_ptr<Impl> impl_;
};

/// Unnormalized 2D DCT-I (FFTW REDFT00) on an n x n array, in place:
///   Y_kl = sum over the full even extension of period 2(n-1) in both axes.
/// Equivalently the length-2(n-1) DFT of an even sequence sampled on [0, pi].
void cosine_transform_2d(std::span<double> data, std::size_t n);

/// Convenience out-of-place transforms (each counts as one Plan1D call).
std::vector<cplx> fft(std::span<const cplx> v);
std::vector<cplx> ifft(std::span<const cplx> v);

/// Smallest integer >= n whose only prime factors are 2, 3, 5 and 7.
std::size_t next_smooth_size(std::size_t n);

}  // namespace fracwave::fft
