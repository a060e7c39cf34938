#pragma once

// File formats.
//
// Snapshot CSV: header "i,j,value", one row per interior node, i and j the
// 1-based node indices along x and y, value printed with 17 significant
// digits ("%.17g"). Rows run with i fastest.
//
// Snapshot raw: <base>.bin holds n*n IEEE-754 binary64 values, little endian,
// row-major with the row index j (y) and column index i (x), i.e. value
// (i, j) at offset 8 * ((j-1) * n + (i-1)). <base>.txt is a sidecar of
// "key = value" lines: n, h, a, b, t, step, alpha, kappa, nonlinearity,
// surface, layout.
//
// Coefficient CSV: header "i,j,value"; 1D tables use j = 0.

#include <string>
#include <string_view>

#include "fracwave/field.hpp"
#include "fracwave/fraccoef.hpp"

namespace fracwave {

enum class Surface { u, sin_u, sin_half_u };

Surface parse_surface(std::string_view s);
std::string_view to_string(Surface s);
Field transform_surface(const Field& u, Surface s);

struct SnapshotMeta {
  Grid2D grid;
  double time = 0.0;
  std::size_t step = 0;
  double alpha = 0.0;
  double kappa = 0.0;
  std::string nonlinearity;
  Surface surface = Surface::u;
};

void write_snapshot_csv(const std::string& path, const Field& values);
void write_snapshot_raw(const std::string& base_path, const Field& values, const SnapshotMeta& meta);
/// Reads back a .bin block of n x n values.
Field read_snapshot_raw(const std::string& bin_path, std::size_t n);

void write_coeffs_csv(const std::string& path, const Coeffs1D& c);
void write_coeffs_csv(const std::string& path, const Coeffs2D& c);

}  // namespace fracwave
