#include "fracwave/norms.hpp"

#include <cmath>

#include "fracwave/errors.hpp"
#include "fracwave/kernels.hpp"

namespace fracwave {

NormKind parse_norm_kind(std::string_view s) {
  if (s == "l2") return NormKind::l2;
  if (s == "A") return NormKind::A;
  if (s == "A_tilde" || s == "A~") return NormKind::A_tilde;
  if (s == "B") return NormKind::B;
  throw ValidationError("unknown norm '" + std::string(s) + "'");
}

NormOperators::NormOperators(const StepOperators& ops) : grid_(ops.grid), lap_(ops.lap) {
  const std::size_t n = grid_.n;
  const double h_scale = std::pow(grid_.h, -ops.alpha.value());
  riesz_sum_ = std::make_shared<const BttbOperator>(riesz_sum_coeffs_2d(ops.alpha, n), n, h_scale);
  std::vector<double> col(ops.riesz.weights.begin(), ops.riesz.weights.begin() + static_cast<std::ptrdiff_t>(n));
  for (auto& x : col) x *= h_scale;
  riesz_1d_ = std::make_shared<const ToeplitzOperator>(col);
}

Field NormOperators::apply(NormKind kind, const Field& w) const {
  if (w.n() != grid_.n) throw ValidationError("norm: field shape mismatch");
  switch (kind) {
    case NormKind::l2:
      return w;
    case NormKind::A:
      return lap_->apply(w);
    case NormKind::A_tilde:
      return riesz_sum_->apply(w);
    case NormKind::B: {
      Field tmp(w.n()), out(w.n());
      kernels::toeplitz_lines(*riesz_1d_, w, tmp);
      kernels::toeplitz_lines(*riesz_1d_, tmp.transposed(), out);
      return out.transposed();
    }
  }
  throw ValidationError("norm: unknown kind");
}

double inner_product(NormKind kind, const Field& w1, const Field& w2, const NormOperators& norms) {
  if (w1.n() != w2.n()) throw ValidationError("inner_product: shape mismatch");
  const Field a = norms.apply(kind, w1);
  const double h = norms.grid().h;
  double s = 0.0;
  auto av = a.values();
  auto bv = w2.values();
  for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
  return h * h * s;
}

double norm_squared(NormKind kind, const Field& w, const NormOperators& norms) {
  return inner_product(kind, w, w, norms);
}

double norm_dominance_gap(const Field& w, const NormOperators& norms) {
  return norm_squared(NormKind::A_tilde, w, norms) - norm_squared(NormKind::A, w, norms);
}

double discrete_energy(const SchemeState& state, const StepOperators& ops,
                       const NormOperators& norms) {
  const double tau = ops.tau_step;
  const double c = ops.implicit_factor;
  const double kappa = ops.kappa;
  Field d = state.u_curr - state.u_prev;
  d *= 1.0 / tau;
  return norm_squared(NormKind::l2, d, norms) + c * norm_dominance_gap(d, norms) +
         0.5 * kappa *
             (norm_squared(NormKind::A, state.u_curr, norms) +
              norm_squared(NormKind::A, state.u_prev, norms)) +
         0.25 * kappa * kappa * tau * tau * tau * tau * norm_squared(NormKind::B, d, norms);
}

}  // namespace fracwave
