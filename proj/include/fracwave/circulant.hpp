#pragma once

// Circulant and skew-circulant products through their Fourier
// diagonalizations:
//   C = F^* diag(lambda_c) F,            lambda_c = fft(c)
//   S = Q^* F^* diag(lambda_s) F Q,      lambda_s = fft(Q s),
// with Q = diag(exp(-i pi k / n)) and c, s the first columns.

#include <span>
#include <vector>

#include "fracwave/fft.hpp"

namespace fracwave {

using fft::cplx;

/// Diagonal of Q: q_k = exp(-i pi k / n).
std::vector<cplx> skew_phase(std::size_t n);

std::vector<cplx> circulant_eigenvalues(std::span<const cplx> first_col);
std::vector<cplx> skew_circulant_eigenvalues(std::span<const cplx> first_col,
                                             std::span<const cplx> q_diag);

/// In-place kernels: two transforms each.
void circulant_apply(const fft::Plan1D& plan, std::span<const cplx> lambda_c, std::span<cplx> v);
void skew_circulant_apply(const fft::Plan1D& plan, std::span<const cplx> lambda_s,
                          std::span<const cplx> q_diag, std::span<cplx> v);

std::vector<cplx> circulant_matvec(std::span<const cplx> lambda_c, std::span<const cplx> v);
std::vector<cplx> skew_circulant_matvec(std::span<const cplx> lambda_s,
                                        std::span<const cplx> q_diag, std::span<const cplx> v);

}  // namespace fracwave
