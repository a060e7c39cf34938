#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracwave {

/// Uniform grid on the square (a, b)^2 with n interior nodes per axis:
/// x_i = a + i h for i = 1..n, h = (b - a) / (n + 1).
struct Grid2D {
  double a = 0.0;
  double b = 1.0;
  std::size_t n = 1;
  double h = 0.5;

  static Grid2D from_nodes(double a, double b, std::size_t n);
  /// Requires (b - a) / h to be an integer >= 2 (to 1e-9 relative).
  static Grid2D from_spacing(double a, double b, double h);

  /// Coordinate of interior node index k in 0..n-1 (node k + 1 above).
  double node(std::size_t k) const noexcept { return a + static_cast<double>(k + 1) * h; }
};

/// n x n grid function on the interior nodes; zero outside by definition.
/// Storage keeps each x-line contiguous: (i, j) lives at data[j * n + i].
class Field {
public:
  Field() = default;
  explicit Field(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * n_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * n_ + i]; }

  std::span<double> line(std::size_t j) noexcept { return {data_.data() + j * n_, n_}; }
  std::span<const double> line(std::size_t j) const noexcept { return {data_.data() + j * n_, n_}; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  Field transposed() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s);

  friend bool operator==(const Field&, const Field&) = default;

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// max |a - b| over all nodes.
double max_abs_diff(const Field& a, const Field& b);
double max_abs(const Field& a);

}  // namespace fracwave
