#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/fraccoef.hpp"

// Independent evaluation of the 2D fractional-Laplacian weights by adaptive
// tensor-product Gauss-Kronrod (7/15) cubature. Shares nothing with the FFT
// path in fraccoef.cpp.

namespace fracwave {

namespace {

// QUADPACK qk15 nodes (descending, last is the midpoint) and weights.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights belong to the odd-indexed nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule15 {
  std::array<double, 15> x{};
  std::array<double, 15> wk{};
  std::array<double, 15> wg{};  // zero on Kronrod-only nodes
};

Rule15 make_rule() {
  Rule15 r;
  for (std::size_t k = 0; k < 7; ++k) {
    r.x[k] = -kNodes[k];
    r.x[14 - k] = kNodes[k];
    r.wk[k] = r.wk[14 - k] = kKronrod[k];
    const double g = (k % 2 == 1) ? kGauss[k / 2] : 0.0;
    r.wg[k] = r.wg[14 - k] = g;
  }
  r.x[7] = 0.0;
  r.wk[7] = kKronrod[7];
  r.wg[7] = kGauss[3];
  return r;
}

struct Cell {
  double x0, x1, y0, y1;
  double value;
  double error;
  bool operator<(const Cell& o) const { return error < o.error; }
};

template <class F>
Cell integrate_cell(const F& f, const Rule15& rule, double x0, double x1, double y0, double y1) {
  const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
  const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
  double kron = 0.0, gauss = 0.0;
  for (std::size_t a = 0; a < 15; ++a) {
    const double x = cx + hx * rule.x[a];
    double row_k = 0.0, row_g = 0.0;
    for (std::size_t b = 0; b < 15; ++b) {
      const double v = f(x, cy + hy * rule.x[b]);
      row_k += rule.wk[b] * v;
      row_g += rule.wg[b] * v;
    }
    kron += rule.wk[a] * row_k;
    gauss += rule.wg[a] * row_g;
  }
  const double area = hx * hy;
  return {x0, x1, y0, y1, kron * area, std::abs(kron - gauss) * area};
}

}  // namespace

double coeff_quadrature_oracle(FracOrder alpha, long i, long j, double tol,
                               std::size_t max_evaluations) {
  if (!(tol > 0.0)) throw ValidationError("coeff_quadrature_oracle: tol must be positive");
  const double half = alpha / 2.0;
  const double di = static_cast<double>(i), dj = static_cast<double>(j);
  // Even integrand: the full-square integral is four times the [0,pi]^2 one,
  // and the sine parts cancel.
  auto integrand = [&](double eta, double xi) {
    const double se = std::sin(0.5 * eta), sx = std::sin(0.5 * xi);
    const double symbol = std::pow(4.0 * (se * se + sx * sx), half);
    return symbol * std::cos(di * eta) * std::cos(dj * xi);
  };

  const Rule15 rule = make_rule();
  constexpr double pi = std::numbers::pi;
  std::priority_queue<Cell> cells;
  cells.push(integrate_cell(integrand, rule, 0.0, pi, 0.0, pi));
  std::size_t evaluations = 225;
  double total = cells.top().value, error = cells.top().error;

  // 1/pi^2 normalization is applied to the tolerance up front.
  const double target = tol * pi * pi;
  while (error > target) {
    if (evaluations + 4 * 225 > max_evaluations)
      throw ConvergenceError("coeff_quadrature_oracle: evaluation budget exhausted for (" +
                             std::to_string(i) + ", " + std::to_string(j) + ")");
    const Cell worst = cells.top();
    cells.pop();
    total -= worst.value;
    error -= worst.error;
    const double mx = 0.5 * (worst.x0 + worst.x1), my = 0.5 * (worst.y0 + worst.y1);
    for (const auto& [x0, x1, y0, y1] :
         {std::array{worst.x0, mx, worst.y0, my}, std::array{mx, worst.x1, worst.y0, my},
          std::array{worst.x0, mx, my, worst.y1}, std::array{mx, worst.x1, my, worst.y1}}) {
      Cell c = integrate_cell(integrand, rule, x0, x1, y0, y1);
      total += c.value;
      error += c.error;
      cells.push(c);
    }
    evaluations += 4 * 225;
  }

  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  while (!cells.empty()) {
    total += cells.top().value;
    cells.pop();
  }
  return total / (pi * pi);
}

}  // namespace fracwave
