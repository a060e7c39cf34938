#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

struct PcgReport {
  int iterations = 0;
  double final_relative_residual = 0.0;
  bool converged = false;
};

namespace detail {
inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}
}  // namespace detail

/// Preconditioned conjugate gradients for an SPD operator.
///
/// apply_a(in, out) writes A*in; apply_m_inv(v) replaces v with M^{-1} v.
/// x carries the initial guess on entry and the iterate on exit. Iteration
/// stops once ||b - A x|| / ||b|| <= tol (recursively updated residual).
/// Non-convergence is reported, not thrown.
template <class ApplyA, class ApplyMInv>
PcgReport pcg(ApplyA&& apply_a, ApplyMInv&& apply_m_inv, std::span<const double> b,
              std::span<double> x, double tol, int max_iter) {
  if (b.size() != x.size()) throw ValidationError("pcg: length mismatch");
  if (!(tol > 0.0)) throw ValidationError("pcg: tol must be positive");
  const std::size_t n = b.size();
  PcgReport report;

  const double b_norm = std::sqrt(detail::dot(b, b));
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    report.converged = true;
    return report;
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  apply_a(std::span<const double>(x), std::span<double>(ap));
  for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - ap[k];
  double res = std::sqrt(detail::dot(r, r)) / b_norm;
  if (res <= tol) {
    report.final_relative_residual = res;
    report.converged = true;
    return report;
  }

  z = r;
  apply_m_inv(std::span<double>(z));
  p = z;
  double rz = detail::dot(r, z);
  for (int it = 1; it <= max_iter; ++it) {
    apply_a(std::span<const double>(p), std::span<double>(ap));
    const double step = rz / detail::dot(p, ap);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += step * p[k];
      r[k] -= step * ap[k];
    }
    res = std::sqrt(detail::dot(r, r)) / b_norm;
    report.iterations = it;
    report.final_relative_residual = res;
    if (res <= tol) {
      report.converged = true;
      return report;
    }
    z = r;
    apply_m_inv(std::span<double>(z));
    const double rz_next = detail::dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
  return report;
}

/// Identity preconditioner for pcg.
struct NoPreconditioner {
  void operator()(std::span<double>) const noexcept {}
};

}  // namespace fracwave
