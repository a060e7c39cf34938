#pragma once

// Tau preconditioners: matrices diagonalized by the DST-I, with eigenvalues
// given by the generating symbol sampled at theta_p = p pi / (n + 1):
//   1D:  d_p  = 1 + factor (4 sin^2(theta_p/2))^{alpha/2}
//   2D:  d_pq = 1 + factor (4 sin^2(theta_p/2) + 4 sin^2(theta_q/2))^{alpha/2}
// "factor" carries every scalar in front of the operator, including h^{-alpha}.

#include <memory>
#include <span>
#include <vector>

#include "fracwave/fft.hpp"
#include "fracwave/fraccoef.hpp"

namespace fracwave {

/// Orthonormal DST-I, y_k = sqrt(2/(n+1)) sum_j v_j sin(pi (j+1)(k+1)/(n+1)).
std::vector<double> dst1(std::span<const double> v);

class TauSpec1D {
public:
  TauSpec1D(FracOrder alpha, std::size_t n, double factor);

  std::size_t size() const noexcept { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

  /// v <- M^{-1} v.
  void apply(std::span<double> v) const;

private:
  std::vector<double> eigenvalues_;
  std::shared_ptr<const fft::SinePlan> plan_;
};

class TauSpec2D {
public:
  TauSpec2D(FracOrder alpha, std::size_t n, double factor);

  std::size_t n() const noexcept { return n_; }
  /// Row-major n x n, entry [p * n + q].
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

  /// v <- M^{-1} v on an n x n array.
  void apply(std::span<double> v) const;

private:
  std::size_t n_;
  std::vector<double> eigenvalues_;
  std::shared_ptr<const fft::SinePlan> plan_;
};

}  // namespace fracwave
