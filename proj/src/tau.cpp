#include "fracwave/tau.hpp"

#include <cmath>
#include <numbers>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

// 4 sin^2(theta_p / 2) at theta_p = p pi / (n + 1), p = 1..n.
std::vector<double> sampled_second_difference(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double half_theta =
        0.5 * std::numbers::pi * static_cast<double>(p + 1) / static_cast<double>(n + 1);
    const double sh = std::sin(half_theta);
    s[p] = 4.0 * sh * sh;
  }
  return s;
}

}  // namespace

std::vector<double> dst1(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  if (out.empty()) return out;
  fft::SinePlan(out.size()).apply(out);
  return out;
}

TauSpec1D::TauSpec1D(FracOrder alpha, std::size_t n, double factor) {
  if (n < 1) throw ValidationError("tau preconditioner: n must be >= 1");
  if (!(factor >= 0.0)) throw ValidationError("tau preconditioner: factor must be >= 0");
  const auto s = sampled_second_difference(n);
  eigenvalues_.resize(n);
  for (std::size_t p = 0; p < n; ++p) eigenvalues_[p] = 1.0 + factor * std::pow(s[p], alpha / 2.0);
  plan_ = std::make_shared<const fft::SinePlan>(n);
}

void TauSpec1D::apply(std::span<double> v) const {
  if (v.size() != eigenvalues_.size()) throw ValidationError("TauSpec1D::apply: length mismatch");
  plan_->apply(v);
  for (std::size_t p = 0; p < v.size(); ++p) v[p] /= eigenvalues_[p];
  plan_->apply(v);
}

TauSpec2D::TauSpec2D(FracOrder alpha, std::size_t n, double factor) : n_(n) {
  if (n < 1) throw ValidationError("tau preconditioner: n must be >= 1");
  if (!(factor >= 0.0)) throw ValidationError("tau preconditioner: factor must be >= 0");
  const auto s = sampled_second_difference(n);
  eigenvalues_.resize(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      eigenvalues_[p * n + q] = 1.0 + factor * std::pow(s[p] + s[q], alpha / 2.0);
  plan_ = std::make_shared<const fft::SinePlan>(n, true);
}

void TauSpec2D::apply(std::span<double> v) const {
  if (v.size() != eigenvalues_.size()) throw ValidationError("TauSpec2D::apply: shape mismatch");
  plan_->apply(v);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] /= eigenvalues_[k];
  plan_->apply(v);
}

}  // namespace fracwave
