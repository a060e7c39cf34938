#include "fracwave/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracwave/errors.hpp"

namespace fracwave {

Grid2D Grid2D::from_nodes(double a, double b, std::size_t n) {
  if (!(b > a)) throw ValidationError("grid: need b > a");
  if (n < 1) throw ValidationError("grid: need at least one interior node");
  return {a, b, n, (b - a) / static_cast<double>(n + 1)};
}

Grid2D Grid2D::from_spacing(double a, double b, double h) {
  if (!(b > a)) throw ValidationError("grid: need b > a");
  if (!(h > 0.0)) throw ValidationError("grid: spacing must be positive");
  const double cells = (b - a) / h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells) || rounded < 2.0)
    throw ValidationError("grid: spacing " + std::to_string(h) + " does not divide (" +
                          std::to_string(a) + ", " + std::to_string(b) +
                          ") into an integral number of cells");
  return from_nodes(a, b, static_cast<std::size_t>(rounded) - 1);
}

Field Field::transposed() const {
  Field t(n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i) t.data_[i * n_ + j] = data_[j * n_ + i];
  return t;
}

Field& Field::operator+=(const Field& o) {
  if (o.n_ != n_) throw ValidationError("field shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  if (o.n_ != n_) throw ValidationError("field shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

double max_abs_diff(const Field& a, const Field& b) {
  if (a.n() != b.n()) throw ValidationError("field shape mismatch");
  double m = 0.0;
  auto va = a.values(), vb = b.values();
  for (std::size_t k = 0; k < va.size(); ++k) m = std::max(m, std::abs(va[k] - vb[k]));
  return m;
}

double max_abs(const Field& a) {
  double m = 0.0;
  for (double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace fracwave
