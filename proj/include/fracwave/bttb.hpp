#pragma once

// Block-Toeplitz-with-Toeplitz-blocks operators (the matrices of the 2D
// difference operators with zero exterior data), applied by embedding in a
// block-circulant-circulant-block matrix and two 2D real FFTs.

#include <memory>
#include <vector>

#include "fracwave/fft.hpp"
#include "fracwave/field.hpp"
#include "fracwave/fraccoef.hpp"

namespace fracwave {

class BttbOperator {
public:
  /// (L u)_{ij} = scale * sum_{p,q} a_{|i-p|,|j-q|} u_{pq}. Needs coeffs.count >= n.
  BttbOperator(const Coeffs2D& coeffs, std::size_t n, double scale);

  std::size_t n() const noexcept { return n_; }
  /// Side of the periodic embedding (>= 2n - 1, 7-smooth).
  std::size_t embedding_size() const noexcept { return p_; }

  void apply(const Field& u, Field& out) const;
  Field apply(const Field& u) const;

private:
  std::size_t n_;
  std::size_t p_;
  std::vector<double> spectrum_;  // real: the embedded kernel is real and even
  std::shared_ptr<const fft::RealPlan2D> plan_;
};

}  // namespace fracwave
