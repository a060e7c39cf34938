#include "fracwave/circulant.hpp"

#include <cmath>
#include <numbers>

#include "fracwave/errors.hpp"

namespace fracwave {

std::vector<cplx> skew_phase(std::size_t n) {
  std::vector<cplx> q(n);
  for (std::size_t k = 0; k < n; ++k)
    q[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  return q;
}

std::vector<cplx> circulant_eigenvalues(std::span<const cplx> first_col) {
  return fft::fft(first_col);
}

std::vector<cplx> skew_circulant_eigenvalues(std::span<const cplx> first_col,
                                             std::span<const cplx> q_diag) {
  if (first_col.size() != q_diag.size())
    throw ValidationError("skew_circulant_eigenvalues: length mismatch");
  std::vector<cplx> qs(first_col.size());
  for (std::size_t k = 0; k < qs.size(); ++k) qs[k] = q_diag[k] * first_col[k];
  return fft::fft(qs);
}

void circulant_apply(const fft::Plan1D& plan, std::span<const cplx> lambda_c, std::span<cplx> v) {
  if (lambda_c.size() != v.size()) throw ValidationError("circulant_apply: length mismatch");
  plan.forward(v);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] *= lambda_c[k];
  plan.inverse(v);
}

void skew_circulant_apply(const fft::Plan1D& plan, std::span<const cplx> lambda_s,
                          std::span<const cplx> q_diag, std::span<cplx> v) {
  if (lambda_s.size() != v.size() || q_diag.size() != v.size())
    throw ValidationError("skew_circulant_apply: length mismatch");
  for (std::size_t k = 0; k < v.size(); ++k) v[k] *= q_diag[k];
  plan.forward(v);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] *= lambda_s[k];
  plan.inverse(v);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] *= std::conj(q_diag[k]);
}

std::vector<cplx> circulant_matvec(std::span<const cplx> lambda_c, std::span<const cplx> v) {
  if (lambda_c.size() != v.size()) throw ValidationError("circulant_matvec: length mismatch");
  std::vector<cplx> out(v.begin(), v.end());
  circulant_apply(fft::Plan1D(out.size()), lambda_c, out);
  return out;
}

std::vector<cplx> skew_circulant_matvec(std::span<const cplx> lambda_s,
                                        std::span<const cplx> q_diag, std::span<const cplx> v) {
  if (lambda_s.size() != v.size() || q_diag.size() != v.size())
    throw ValidationError("skew_circulant_matvec: length mismatch");
  std::vector<cplx> out(v.begin(), v.end());
  skew_circulant_apply(fft::Plan1D(out.size()), lambda_s, q_diag, out);
  return out;
}

}  // namespace fracwave
