#include "fracwave/bttb.hpp"

#include <algorithm>
#include <string>

#include "fracwave/errors.hpp"

namespace fracwave {

BttbOperator::BttbOperator(const Coeffs2D& coeffs, std::size_t n, double scale) : n_(n) {
  if (n < 1) throw ValidationError("bttb: n must be >= 1");
  if (coeffs.count < n)
    throw ValidationError("bttb: coefficient table holds " + std::to_string(coeffs.count) +
                          " entries per axis, need " + std::to_string(n));
  p_ = fft::next_smooth_size(2 * n);
  plan_ = std::make_shared<const fft::RealPlan2D>(p_, p_);

  // Wrap offsets -(n-1)..(n-1) onto the torus of side p. Rows of the padded
  // array are y offsets, columns x offsets.
  std::vector<double> kernel(p_ * p_, 0.0);
  auto wrap = [this](long d) { return static_cast<std::size_t>(d < 0 ? d + static_cast<long>(p_) : d); };
  const long m = static_cast<long>(n);
  for (long r = -(m - 1); r < m; ++r)
    for (long c = -(m - 1); c < m; ++c) kernel[wrap(r) * p_ + wrap(c)] = scale * coeffs.at(c, r);

  std::vector<fft::cplx> spec(plan_->spectrum_size());
  plan_->forward(kernel, spec);
  spectrum_.resize(spec.size());
  std::transform(spec.begin(), spec.end(), spectrum_.begin(), [](fft::cplx z) { return z.real(); });
}

void BttbOperator::apply(const Field& u, Field& out) const {
  if (u.n() != n_) throw ValidationError("bttb: field shape mismatch");
  if (out.n() != n_) out = Field(n_);
  std::vector<double> padded(p_ * p_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    auto src = u.line(j);
    std::copy(src.begin(), src.end(), padded.begin() + static_cast<std::ptrdiff_t>(j * p_));
  }
  std::vector<fft::cplx> spec(plan_->spectrum_size());
  plan_->forward(padded, spec);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= spectrum_[k];
  plan_->inverse(spec, padded);
  for (std::size_t j = 0; j < n_; ++j) {
    auto dst = out.line(j);
    std::copy_n(padded.begin() + static_cast<std::ptrdiff_t>(j * p_), n_, dst.begin());
  }
}

Field BttbOperator::apply(const Field& u) const {
  Field out(n_);
  apply(u, out);
  return out;
}

}  // namespace fracwave
