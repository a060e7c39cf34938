#pragma once

// Line- and point-parallel kernels of the time step. Every kernel exists in
// an OpenMP form (namespace kernels) and a plain serial form
// (kernels::serial) kept as the reference; both produce bitwise identical
// results because each line or point is computed independently.

#include <functional>

#include "fracwave/field.hpp"
#include "fracwave/toeplitz.hpp"

namespace fracwave {

enum class Exec { serial, parallel };

namespace kernels {

/// Replaces every x-line of f with H^{-1} applied to it.
void solve_lines(const GSData& gs, Field& f);

/// out = T applied to every x-line of f.
void toeplitz_lines(const ToeplitzOperator& t, const Field& f, Field& out);

/// out = a * x + b * g(y), pointwise.
void axpy_map(double a, const Field& x, double b, const std::function<double(double)>& g,
              const Field& y, Field& out);

namespace serial {
void solve_lines(const GSData& gs, Field& f);
void toeplitz_lines(const ToeplitzOperator& t, const Field& f, Field& out);
void axpy_map(double a, const Field& x, double b, const std::function<double(double)>& g,
              const Field& y, Field& out);
}  // namespace serial

}  // namespace kernels
}  // namespace fracwave
