#pragma once

// Discrete inner products on grid functions vanishing outside the interior:
//   <w1, w2>    = h^2 sum w1 w2
//   <w1, w2>_A  = <L_h w1, w2>                      (fractional Laplacian)
//   <w1, w2>_A~ = <(delta_x + delta_y) w1, w2>      (Riesz sum)
//   <w1, w2>_B  = <delta_x delta_y w1, w2>
// All three operators are symmetric positive definite on such functions.

#include <memory>
#include <string_view>

#include "fracwave/bttb.hpp"
#include "fracwave/field.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/toeplitz.hpp"

namespace fracwave {

enum class NormKind { l2, A, A_tilde, B };

NormKind parse_norm_kind(std::string_view s);

class NormOperators {
public:
  explicit NormOperators(const StepOperators& ops);

  const Grid2D& grid() const noexcept { return grid_; }
  /// The operator behind the inner product (identity for l2).
  Field apply(NormKind kind, const Field& w) const;

private:
  Grid2D grid_;
  std::shared_ptr<const BttbOperator> lap_;
  std::shared_ptr<const BttbOperator> riesz_sum_;
  std::shared_ptr<const ToeplitzOperator> riesz_1d_;
};

double inner_product(NormKind kind, const Field& w1, const Field& w2, const NormOperators& norms);
double norm_squared(NormKind kind, const Field& w, const NormOperators& norms);

/// ||w||_A~^2 - ||w||_A^2, nonnegative for 1 < alpha < 2.
double norm_dominance_gap(const Field& w, const NormOperators& norms);

/// Squared energy of the pair (u^n, u^{n+1}) = (state.u_prev, state.u_curr):
///   ||d||^2 + c (||d||_A~^2 - ||d||_A^2) + (kappa/2)(||u^{n+1}||_A^2 + ||u^n||_A^2)
///   + (kappa^2 tau^4 / 4) ||d||_B^2,     d = (u^{n+1} - u^n)/tau, c = tau^2 kappa/2.
/// Constant in n when g = 0.
double discrete_energy(const SchemeState& state, const StepOperators& ops,
                       const NormOperators& norms);

}  // namespace fracwave
