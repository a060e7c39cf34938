#include "fracwave/toeplitz.hpp"

#include <algorithm>
#include <string>

#include "fracwave/errors.hpp"
#include "fracwave/tau.hpp"

namespace fracwave {

ToeplitzOperator::ToeplitzOperator(std::span<const double> first_col) : n_(first_col.size()) {
  if (n_ == 0) throw ValidationError("ToeplitzOperator: empty first column");
  // Circulant of order m >= 2n-1: [t_0 .. t_{n-1}, 0 .., t_{n-1} .. t_1].
  const std::size_t m = fft::next_smooth_size(2 * n_ - 1);
  std::vector<cplx> embed(m, 0.0);
  for (std::size_t k = 0; k < n_; ++k) embed[k] = first_col[k];
  for (std::size_t k = 1; k < n_; ++k) embed[m - k] = first_col[k];
  plan_ = std::make_shared<const fft::Plan1D>(m);
  plan_->forward(embed);
  eigenvalues_ = std::move(embed);
}

void ToeplitzOperator::apply(std::span<const double> v, std::span<double> out) const {
  if (v.size() != n_ || out.size() != n_) throw ValidationError("toeplitz_matvec: length mismatch");
  std::vector<cplx> work(plan_->size(), 0.0);
  std::copy(v.begin(), v.end(), work.begin());
  circulant_apply(*plan_, eigenvalues_, work);
  for (std::size_t k = 0; k < n_; ++k) out[k] = work[k].real();
}

std::vector<double> ToeplitzOperator::apply(std::span<const double> v) const {
  std::vector<double> out(n_);
  apply(v, out);
  return out;
}

std::vector<double> toeplitz_matvec(std::span<const double> first_col, std::span<const double> v) {
  if (first_col.size() != v.size()) throw ValidationError("toeplitz_matvec: length mismatch");
  return ToeplitzOperator(first_col).apply(v);
}

GSData gs_from_inverse_column(std::span<const double> c) {
  const std::size_t n = c.size();
  if (n == 0) throw ValidationError("gs: empty system");
  GSData data;
  data.p1 = c[0];
  if (!(data.p1 > 0.0))
    throw ValidationError("gs: p1 = " + std::to_string(data.p1) +
                          " is not positive; the Toeplitz matrix is not SPD");
  data.q_diag = skew_phase(n);
  std::vector<cplx> col(c.begin(), c.end());
  std::vector<cplx> s(n);
  s[0] = c[0];
  for (std::size_t k = 1; k < n; ++k) s[k] = -c[n - k];
  data.plan = std::make_shared<const fft::Plan1D>(n);

  data.lambda_c = col;
  data.plan->forward(data.lambda_c);
  data.lambda_s.resize(n);
  for (std::size_t k = 0; k < n; ++k) data.lambda_s[k] = data.q_diag[k] * s[k];
  data.plan->forward(data.lambda_s);

  if (fft::next_smooth_size(n) != n) {
    // Toeplitz embeddings: first columns c and s, first rows [c_0, c_{n-1}, .., c_1]
    // and [s_0, -s_{n-1}, .., -s_1] placed in the wrap-around tail.
    const std::size_t m = fft::next_smooth_size(2 * n - 1);
    data.embed_size = m;
    data.embed_plan = std::make_shared<const fft::Plan1D>(m);
    data.embed_c.assign(m, 0.0);
    data.embed_s.assign(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      data.embed_c[k] = c[k];
      data.embed_s[k] = s[k];
    }
    for (std::size_t j = 1; j < n; ++j) {
      data.embed_c[m - j] = c[n - j];
      data.embed_s[m - j] = -s[n - j];
    }
    data.embed_plan->forward(data.embed_c);
    data.embed_plan->forward(data.embed_s);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
      data.embed_c[k] *= inv_m;
      data.embed_s[k] *= inv_m;
    }
  }
  return data;
}

GSData gs_precompute(const SymToeplitz& h, double tol, const TauSpec1D* preconditioner,
                     int max_iter) {
  const std::size_t n = h.size();
  if (n == 0) throw ValidationError("gs_precompute: empty matrix");
  if (preconditioner && preconditioner->size() != n)
    throw ValidationError("gs_precompute: preconditioner size mismatch");
  if (max_iter <= 0) max_iter = static_cast<int>(std::max<std::size_t>(n, 100));

  const ToeplitzOperator op(h.first_col);
  std::vector<double> e1(n, 0.0), c(n, 0.0);
  e1[0] = 1.0;
  auto apply_a = [&](std::span<const double> in, std::span<double> out) { op.apply(in, out); };
  PcgReport report;
  if (preconditioner) {
    report = pcg(apply_a, [&](std::span<double> v) { preconditioner->apply(v); }, e1, c, tol,
                 max_iter);
  } else {
    report = pcg(apply_a, NoPreconditioner{}, e1, c, tol, max_iter);
  }
  if (!report.converged)
    throw ConvergenceError("gs_precompute: PCG stopped at relative residual " +
                           std::to_string(report.final_relative_residual) + " after " +
                           std::to_string(report.iterations) + " iterations");
  GSData data = gs_from_inverse_column(c);
  data.precompute_report = report;
  return data;
}

void gs_solve(const GSData& data, std::span<const double> v, std::span<double> out,
              GsWorkspace& ws) {
  const std::size_t n = data.size();
  if (v.size() != n || out.size() != n) throw ValidationError("gs_solve: length mismatch");
  auto& w = ws.buffer;
  const double scale = 0.5 / data.p1;
  if (data.embed_size) {
    const std::size_t m = data.embed_size;
    w.assign(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) w[k] = cplx(v[k], v[n - 1 - k]) * scale;
    data.embed_plan->forward(w);
    for (std::size_t k = 0; k < m; ++k) w[k] *= data.embed_s[k];
    data.embed_plan->backward(w);
    std::fill(w.begin() + static_cast<std::ptrdiff_t>(n), w.end(), cplx(0.0));
    data.embed_plan->forward(w);
    for (std::size_t k = 0; k < m; ++k) w[k] *= data.embed_c[k];
    data.embed_plan->backward(w);
    for (std::size_t k = 0; k < n; ++k) out[k] = w[k].real() + w[n - 1 - k].imag();
    return;
  }
  w.resize(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = cplx(v[k], v[n - 1 - k]) * scale;
  skew_circulant_apply(*data.plan, data.lambda_s, data.q_diag, w);
  circulant_apply(*data.plan, data.lambda_c, w);
  for (std::size_t k = 0; k < n; ++k) out[k] = w[k].real() + w[n - 1 - k].imag();
}

std::vector<double> gs_solve(const GSData& data, std::span<const double> v) {
  std::vector<double> out(v.size());
  GsWorkspace ws;
  gs_solve(data, v, out, ws);
  return out;
}

}  // namespace fracwave
