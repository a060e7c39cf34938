#include "fracwave/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>

#include "fracwave/fft.hpp"
#include "fracwave/fraccoef.hpp"
#include "fracwave/norms.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/tau.hpp"
#include "fracwave/toeplitz.hpp"

namespace fracwave {

namespace {

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Field random_field(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(n);
  for (double& v : f.values()) v = dist(rng);
  return f;
}

SelftestCheck check_fft_roundtrip() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<fft::cplx> v(37);
  for (auto& z : v) z = {dist(rng), dist(rng)};
  const auto back = fft::ifft(fft::fft(v));
  double err = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) err = std::max(err, std::abs(back[k] - v[k]));
  return {"fft_roundtrip", err <= 1e-14, fmt("max error %.3e", err)};
}

SelftestCheck check_dst_involution() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(29);
  for (auto& x : v) x = dist(rng);
  const auto back = dst1(dst1(v));
  double err = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) err = std::max(err, std::abs(back[k] - v[k]));
  return {"dst1_involution", err <= 1e-13, fmt("max error %.3e", err)};
}

SelftestCheck check_riesz_recurrence() {
  double worst = 0.0;
  for (double alpha : {1.1, 1.5, 1.9}) {
    const auto c = riesz_coeffs_1d(FracOrder(alpha), 21);
    for (int k = 0; k <= 20; ++k) {
      const double direct = std::pow(-1.0, k) * std::tgamma(alpha + 1.0) /
                            (std::tgamma(alpha / 2.0 - k + 1.0) * std::tgamma(alpha / 2.0 + k + 1.0));
      worst = std::max(worst, std::abs(c.weights[static_cast<std::size_t>(k)] - direct) / std::abs(direct));
    }
  }
  return {"riesz_recurrence_vs_gamma", worst <= 1e-12, fmt("max relative error %.3e", worst)};
}

SelftestCheck check_laplacian_oracle(bool corrupt) {
  double worst = 0.0;
  for (double alpha : {1.1, 1.5, 1.9}) {
    Coeffs2D c = laplacian_coeffs_2d(FracOrder(alpha), 4);
    if (corrupt) c.quadrant[1] += 1e-3;
    for (long i = 0; i <= 2; ++i)
      for (long j = 0; j <= 2; ++j)
        worst = std::max(worst, std::abs(c.at(i, j) - coeff_quadrature_oracle(FracOrder(alpha), i, j, 1e-10)));
  }
  return {"laplacian_coeffs_vs_quadrature", worst <= 1e-8, fmt("max abs error %.3e", worst)};
}

SelftestCheck check_gs_roundtrip() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (std::size_t n : {5u, 16u, 33u}) {
    const auto a = riesz_coeffs_1d(FracOrder(1.5), n);
    SymToeplitz h{std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) h.first_col[k] = 3.0 * a.weights[k];
    h.first_col[0] += 1.0;
    const GSData gs = gs_precompute(h, 1e-14);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    const auto back = gs_solve(gs, toeplitz_matvec(h.first_col, v));
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      num += (back[k] - v[k]) * (back[k] - v[k]);
      den += v[k] * v[k];
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return {"gs_solve_roundtrip", worst <= 1e-10, fmt("max relative error %.3e", worst)};
}

SelftestCheck check_adi_factorization() {
  Problem p;
  p.a = 0.0;
  p.b = 1.0;
  p.alpha = FracOrder(1.7);
  const Grid2D grid = Grid2D::from_nodes(0.0, 1.0, 12);
  const StepOperators ops = build_operators(p, grid, 0.05, Scheme::sadi);
  std::mt19937_64 rng(4);
  const Field b = random_field(12, rng);
  const Field w = adi_solve(ops, b);
  // Re-apply (I + c delta_x)(I + c delta_y) line by line.
  const ToeplitzOperator h(ops.h_matrix.first_col);
  Field t1(12), t2(12);
  kernels::serial::toeplitz_lines(h, w, t1);
  kernels::serial::toeplitz_lines(h, t1.transposed(), t2);
  const double err = max_abs_diff(t2.transposed(), b) / max_abs(b);
  return {"adi_factorization", err <= 1e-11, fmt("relative residual %.3e", err)};
}

SelftestCheck check_norm_dominance() {
  std::mt19937_64 rng(5);
  double worst = std::numeric_limits<double>::infinity();
  for (double alpha : {1.1, 1.5, 1.9}) {
    Problem p;
    p.a = -1.0;
    p.b = 1.0;
    p.alpha = FracOrder(alpha);
    const StepOperators ops = build_operators(p, Grid2D::from_nodes(-1.0, 1.0, 16), 0.1);
    const NormOperators norms(ops);
    for (int trial = 0; trial < 20; ++trial) {
      const Field w = random_field(16, rng);
      const double gap = norm_dominance_gap(w, norms) / norm_squared(NormKind::A_tilde, w, norms);
      worst = std::min(worst, gap);
    }
  }
  return {"norm_dominance", worst >= -1e-11, fmt("min relative gap %.3e", worst)};
}

SelftestCheck check_energy() {
  Problem p;
  p.a = -1.0;
  p.b = 1.0;
  p.alpha = FracOrder(1.5);
  p.nonlinearity = "zero";
  p.phi1 = [](double x, double y) { return std::exp(-10.0 * (x * x + y * y)); };
  p.phi2 = [](double x, double y) { return x * std::exp(-8.0 * (x * x + y * y)); };
  const Grid2D grid = Grid2D::from_nodes(-1.0, 1.0, 32);
  const double tau = 5.0 * grid.h;
  double e0 = 0.0, drift = 0.0;
  std::unique_ptr<NormOperators> norms;
  run(p, grid, tau, 50, Scheme::sadi, [&](const SchemeState& s, const StepOperators& ops) {
    if (s.step == 0) return;
    if (!norms) norms = std::make_unique<NormOperators>(ops);
    const double e = discrete_energy(s, ops, *norms);
    if (s.step == 1) e0 = e;
    drift = std::max(drift, std::abs(e - e0) / e0);
  });
  return {"energy_conservation", drift <= 1e-10, fmt("max relative drift %.3e", drift)};
}

}  // namespace

bool SelftestReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string SelftestReport::text() const {
  std::string out;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    out += (c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
    if (!c.passed) ++failed;
  }
  out += failed == 0 ? "selftest passed (" + std::to_string(checks.size()) + " checks)\n"
                     : "selftest FAILED (" + std::to_string(failed) + " of " +
                           std::to_string(checks.size()) + " checks)\n";
  return out;
}

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  const std::vector<std::function<SelftestCheck()>> checks = {
      check_fft_roundtrip,
      check_dst_involution,
      check_riesz_recurrence,
      [&] { return check_laplacian_oracle(options.corrupt_coefficients); },
      check_gs_roundtrip,
      check_adi_factorization,
      check_norm_dominance,
      check_energy,
  };
  for (const auto& check : checks) {
    try {
      report.checks.push_back(check());
    } catch (const std::exception& e) {
      report.checks.push_back({"exception", false, e.what()});
    }
  }
  return report;
}

}  // namespace fracwave
