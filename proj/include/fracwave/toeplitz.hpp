#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fracwave/circulant.hpp"
#include "fracwave/fft.hpp"
#include "fracwave/pcg.hpp"

namespace fracwave {

class TauSpec1D;

/// Symmetric Toeplitz matrix [first_col[|i - j|]].
struct SymToeplitz {
  std::vector<double> first_col;
  std::size_t size() const noexcept { return first_col.size(); }
};

/// Symmetric Toeplitz product via embedding into a circulant of order
/// next_smooth_size(2n - 1).
class ToeplitzOperator {
public:
  explicit ToeplitzOperator(std::span<const double> first_col);

  std::size_t size() const noexcept { return n_; }
  void apply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> v) const;

private:
  std::size_t n_;
  std::vector<cplx> eigenvalues_;
  std::shared_ptr<const fft::Plan1D> plan_;
};

std::vector<double> toeplitz_matvec(std::span<const double> first_col, std::span<const double> v);

/// Gohberg-Semencul representation of H^{-1} for an SPD Toeplitz H.
/// With c = H^{-1} e_1 = [p_1, ..., p_n] and s = [p_1, -p_n, ..., -p_2]:
///   H^{-1} v = Re(w) + J Im(w),  w = C S (v + i J v) / (2 p_1),
/// C circulant with first column c, S skew-circulant with first column s.
struct GSData {
  double p1 = 0.0;
  std::vector<cplx> lambda_c;
  std::vector<cplx> lambda_s;
  std::vector<cplx> q_diag;
  std::shared_ptr<const fft::Plan1D> plan;
  PcgReport precompute_report;

  /// When n has a prime factor above 7, C and S are applied as Toeplitz
  /// products inside a circulant of smooth order embed_size instead (still
  /// four transforms per solve, each much cheaper). 0 means the direct path.
  std::size_t embed_size = 0;
  std::vector<cplx> embed_c;  // spectra of the embeddings, 1/embed_size folded in
  std::vector<cplx> embed_s;
  std::shared_ptr<const fft::Plan1D> embed_plan;


  std::size_t size() const noexcept { return lambda_c.size(); }
};

/// Per-thread scratch for gs_solve.
struct GsWorkspace {
  std::vector<cplx> buffer;
};

/// Solves H c = e_1 by PCG (optionally tau-preconditioned) and forms the
/// eigenvalue data. Throws ConvergenceError if PCG stalls and
/// ValidationError if p_1 <= 0.
GSData gs_precompute(const SymToeplitz& h, double tol, const TauSpec1D* preconditioner = nullptr,
                     int max_iter = 0);

/// Builds the eigenvalue data from a known first column c = H^{-1} e_1.
GSData gs_from_inverse_column(std::span<const double> c);

/// out = H^{-1} v with four length-n transforms. v and out may alias.
void gs_solve(const GSData& data, std::span<const double> v, std::span<double> out,
              GsWorkspace& ws);
std::vector<double> gs_solve(const GSData& data, std::span<const double> v);

}  // namespace fracwave
