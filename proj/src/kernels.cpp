#include "fracwave/kernels.hpp"

#include "fracwave/errors.hpp"

namespace fracwave::kernels {

namespace {

void check_same(const Field& a, const Field& b) {
  if (a.n() != b.n()) throw ValidationError("kernel: field shape mismatch");
}

}  // namespace

void solve_lines(const GSData& gs, Field& f) {
  if (gs.size() != f.n()) throw ValidationError("solve_lines: size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(f.n());
#pragma omp parallel
  {
    GsWorkspace ws;
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      auto line = f.line(static_cast<std::size_t>(j));
      gs_solve(gs, line, line, ws);
    }
  }
}

void toeplitz_lines(const ToeplitzOperator& t, const Field& f, Field& out) {
  if (t.size() != f.n()) throw ValidationError("toeplitz_lines: size mismatch");
  if (out.n() != f.n()) out = Field(f.n());
  const auto n = static_cast<std::ptrdiff_t>(f.n());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j)
    t.apply(f.line(static_cast<std::size_t>(j)), out.line(static_cast<std::size_t>(j)));
}

void axpy_map(double a, const Field& x, double b, const std::function<double(double)>& g,
              const Field& y, Field& out) {
  check_same(x, y);
  if (out.n() != x.n()) out = Field(x.n());
  auto xv = x.values();
  auto yv = y.values();
  auto ov = out.values();
  const auto total = static_cast<std::ptrdiff_t>(xv.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) ov[k] = a * xv[k] + b * g(yv[k]);
}

namespace serial {

void solve_lines(const GSData& gs, Field& f) {
  if (gs.size() != f.n()) throw ValidationError("solve_lines: size mismatch");
  GsWorkspace ws;
  for (std::size_t j = 0; j < f.n(); ++j) {
    auto line = f.line(j);
    gs_solve(gs, line, line, ws);
  }
}

void toeplitz_lines(const ToeplitzOperator& t, const Field& f, Field& out) {
  if (t.size() != f.n()) throw ValidationError("toeplitz_lines: size mismatch");
  if (out.n() != f.n()) out = Field(f.n());
  for (std::size_t j = 0; j < f.n(); ++j) t.apply(f.line(j), out.line(j));
}

void axpy_map(double a, const Field& x, double b, const std::function<double(double)>& g,
              const Field& y, Field& out) {
  check_same(x, y);
  if (out.n() != x.n()) out = Field(x.n());
  auto xv = x.values();
  auto yv = y.values();
  auto ov = out.values();
  for (std::size_t k = 0; k < xv.size(); ++k) ov[k] = a * xv[k] + b * g(yv[k]);
}

}  // namespace serial
}  // namespace fracwave::kernels
