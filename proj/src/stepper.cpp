#include "fracwave/stepper.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>

#include "fracwave/errors.hpp"

namespace fracwave {

// ---------------------------------------------------------------------------
// Nonlinearities

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, Nonlinearity, std::less<>> entries;

  Registry() {
    entries["zero"] = {"zero", [](double) { return 0.0; }};
    entries["sine_gordon"] = {"sine_gordon", [](double u) { return -std::sin(u); }};
    entries["klein_gordon"] = {"klein_gordon", [](double u) { return -u * u * u; }};
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

std::string normalize_name(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '-', '_');
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

const Nonlinearity& find_nonlinearity(std::string_view id) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  auto it = r.entries.find(normalize_name(id));
  if (it == r.entries.end())
    throw ValidationError("unknown nonlinearity '" + std::string(id) + "'");
  return it->second;
}

void register_nonlinearity(std::string id, std::function<double(double)> g) {
  if (!g) throw ValidationError("register_nonlinearity: empty function");
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  id = normalize_name(id);
  r.entries[id] = {id, std::move(g)};
}

Field evaluate_nonlinearity(const Nonlinearity& g, const Field& u) {
  Field out(u.n());
  kernels::axpy_map(0.0, u, 1.0, g.g, u, out);
  return out;
}

Field evaluate_nonlinearity(std::string_view id, const Field& u) {
  return evaluate_nonlinearity(find_nonlinearity(id), u);
}

// ---------------------------------------------------------------------------
// Problems

void Problem::validate() const {
  if (!(b > a)) throw ValidationError("problem: need b > a");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ValidationError("problem: kappa must be a nonnegative finite number");
  find_nonlinearity(nonlinearity);
}

double example_amplitude(std::string_view name) {
  const std::string n = normalize_name(name);
  if (n == "sine_gordon") return 1.0;
  if (n == "klein_gordon") return 2.0;
  throw ValidationError("unknown example '" + std::string(name) + "'");
}

Problem sine_gordon_example(double alpha, double kappa, double amplitude) {
  Problem p;
  p.name = "sine-gordon";
  p.kappa = kappa;
  p.alpha = FracOrder(alpha);
  p.nonlinearity = "sine_gordon";
  p.phi1 = {};
  p.phi2 = [amplitude](double x, double y) { return amplitude * sech(std::sqrt(x * x + y * y)); };
  return p;
}

Problem klein_gordon_example(double alpha, double kappa, double amplitude) {
  Problem p;
  p.name = "klein-gordon";
  p.kappa = kappa;
  p.alpha = FracOrder(alpha);
  p.nonlinearity = "klein_gordon";
  p.phi1 = [amplitude](double x, double y) { return amplitude * sech(std::cosh(x * x + y * y)); };
  p.phi2 = {};
  return p;
}

Problem example_problem(std::string_view name, double alpha, double kappa,
                        std::optional<double> amplitude) {
  const std::string n = normalize_name(name);
  const double amp = amplitude.value_or(example_amplitude(name));
  if (n == "sine_gordon") return sine_gordon_example(alpha, kappa, amp);
  if (n == "klein_gordon") return klein_gordon_example(alpha, kappa, amp);
  throw ValidationError("unknown example '" + std::string(name) + "'");
}

Field sample(const InitialData& f, const Grid2D& grid) {
  Field out(grid.n);
  if (!f) return out;
  for (std::size_t j = 0; j < grid.n; ++j)
    for (std::size_t i = 0; i < grid.n; ++i) out(i, j) = f(grid.node(i), grid.node(j));
  return out;
}

// ---------------------------------------------------------------------------
// Operators

std::string_view to_string(Scheme s) { return s == Scheme::sadi ? "sadi" : "nonadi"; }

Scheme parse_scheme(std::string_view s) {
  const std::string n = normalize_name(s);
  if (n == "sadi" || n == "s_adi") return Scheme::sadi;
  if (n == "nonadi" || n == "non_adi") return Scheme::nonadi;
  throw ValidationError("unknown scheme '" + std::string(s) + "'");
}

StepOperators build_operators(const Problem& problem, const Grid2D& grid, double tau_step,
                              Scheme scheme, const StepOptions& options,
                              std::shared_ptr<const Coeffs2D> coeffs) {
  problem.validate();
  if (!(tau_step > 0.0)) throw ValidationError("time step must be positive");
  if (std::abs(grid.b - grid.a - (problem.b - problem.a)) > 1e-12 * (problem.b - problem.a) ||
      std::abs(grid.a - problem.a) > 1e-12 * std::max(1.0, std::abs(problem.a)))
    throw ValidationError("grid does not cover the problem domain");

  StepOperators ops;
  ops.grid = grid;
  ops.alpha = problem.alpha;
  ops.kappa = problem.kappa;
  ops.tau_step = tau_step;
  ops.implicit_factor = 0.5 * tau_step * tau_step * problem.kappa;
  ops.exec = options.exec;
  ops.pcg_tol = options.pcg_tol;
  ops.pcg_max_iter = options.pcg_max_iter;

  const std::size_t n = grid.n;
  const double h_scale = std::pow(grid.h, -problem.alpha.value());
  if (!coeffs || coeffs->count < n || coeffs->alpha.value() != problem.alpha.value())
    coeffs = std::make_shared<const Coeffs2D>(laplacian_coeffs_2d(problem.alpha, n, options.coeffs));
  ops.lap_coeffs = coeffs;
  ops.lap = std::make_shared<const BttbOperator>(*coeffs, n, h_scale);
  ops.riesz = riesz_coeffs_1d(problem.alpha, n);

  const double factor = ops.implicit_factor * h_scale;
  ops.h_matrix.first_col.resize(n);
  for (std::size_t k = 0; k < n; ++k) ops.h_matrix.first_col[k] = factor * ops.riesz.weights[k];
  ops.h_matrix.first_col[0] += 1.0;

  if (scheme == Scheme::sadi) {
    const TauSpec1D precond(problem.alpha, n, factor);
    ops.gs = gs_precompute(ops.h_matrix, options.gs_tol, &precond);
  } else {
    ops.tau2d.emplace(problem.alpha, n, factor);
  }
  return ops;
}

// ---------------------------------------------------------------------------
// S-ADI

namespace {

const Nonlinearity& problem_g(const Problem& p) { return find_nonlinearity(p.nonlinearity); }

void axpy_map(Exec exec, double a, const Field& x, double b, const std::function<double(double)>& g,
              const Field& y, Field& out) {
  if (exec == Exec::parallel)
    kernels::axpy_map(a, x, b, g, y, out);
  else
    kernels::serial::axpy_map(a, x, b, g, y, out);
}

}  // namespace

Field rhs_general(const SchemeState& state, const StepOperators& ops, const Nonlinearity& g) {
  const double tau2 = ops.tau_step * ops.tau_step;
  const Field lap_u = ops.lap->apply(state.u_curr);
  Field out(lap_u.n());
  axpy_map(ops.exec, -tau2 * ops.kappa, lap_u, tau2, g.g, state.u_curr, out);
  return out;
}

Field rhs_first(const Field& u0, const StepOperators& ops, const Nonlinearity& g,
                const Field& phi2) {
  const double tau = ops.tau_step;
  const double half_tau2 = 0.5 * tau * tau;
  const Field lap_u = ops.lap->apply(u0);
  Field out(lap_u.n());
  axpy_map(ops.exec, -half_tau2 * ops.kappa, lap_u, half_tau2, g.g, u0, out);
  auto ov = out.values();
  auto pv = phi2.values();
  for (std::size_t k = 0; k < ov.size(); ++k) ov[k] += tau * pv[k];
  return out;
}

Field adi_solve(const StepOperators& ops, const Field& b) { return adi_solve(ops, b, ops.exec); }

Field adi_solve(const StepOperators& ops, const Field& b, Exec exec) {
  if (!ops.gs) throw ValidationError("adi_solve: operators were not built for the S-ADI scheme");
  auto solve = exec == Exec::parallel ? kernels::solve_lines : kernels::serial::solve_lines;
  Field w = b;
  solve(*ops.gs, w);
  w = w.transposed();
  solve(*ops.gs, w);
  return w.transposed();
}

SchemeState sadi_first_step(const Problem& problem, const StepOperators& ops) {
  const Nonlinearity& g = problem_g(problem);
  Field u0 = sample(problem.phi1, ops.grid);
  const Field phi2 = sample(problem.phi2, ops.grid);
  Field u1 = adi_solve(ops, rhs_first(u0, ops, g, phi2));
  u1 += u0;
  return {std::move(u0), std::move(u1), 1, ops.tau_step};
}

SchemeState sadi_step(const SchemeState& state, const StepOperators& ops, const Nonlinearity& g) {
  Field next = adi_solve(ops, rhs_general(state, ops, g));
  auto nv = next.values();
  auto cv = state.u_curr.values();
  auto pv = state.u_prev.values();
  for (std::size_t k = 0; k < nv.size(); ++k) nv[k] += 2.0 * cv[k] - pv[k];
  return {state.u_curr, std::move(next), state.step + 1,
          static_cast<double>(state.step + 1) * ops.tau_step};
}

// ---------------------------------------------------------------------------
// Non-ADI

void PcgTotals::add(const PcgReport& r) {
  ++solves;
  iterations += r.iterations;
  max_iterations = std::max(max_iterations, r.iterations);
  worst_residual = std::max(worst_residual, r.final_relative_residual);
}

namespace {

// Solves (I + c L) x = rhs with x holding the initial guess.
void nonadi_solve(const StepOperators& ops, const Field& rhs, Field& x, PcgTotals* totals) {
  if (!ops.tau2d) throw ValidationError("non-ADI step: operators were not built for the non-ADI scheme");
  const std::size_t n = ops.grid.n;
  const double c = ops.implicit_factor;
  Field in(n), lap(n);
  auto apply_a = [&](std::span<const double> v, std::span<double> out) {
    std::copy(v.begin(), v.end(), in.values().begin());
    ops.lap->apply(in, lap);
    auto lv = lap.values();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = v[k] + c * lv[k];
  };
  auto apply_m = [&](std::span<double> v) { ops.tau2d->apply(v); };
  const PcgReport report = pcg(apply_a, apply_m, rhs.values(), x.values(), ops.pcg_tol, ops.pcg_max_iter);
  if (totals) totals->add(report);
  if (!report.converged)
    throw ConvergenceError("non-ADI PCG stalled at relative residual " +
                           std::to_string(report.final_relative_residual) + " after " +
                           std::to_string(report.iterations) + " iterations");
}

}  // namespace

SchemeState nonadi_first_step(const Problem& problem, const StepOperators& ops, PcgTotals* totals) {
  const Nonlinearity& g = problem_g(problem);
  const double tau = ops.tau_step;
  Field u0 = sample(problem.phi1, ops.grid);
  const Field phi2 = sample(problem.phi2, ops.grid);
  Field rhs(u0.n());
  axpy_map(ops.exec, 1.0, u0, 0.5 * tau * tau, g.g, u0, rhs);
  auto rv = rhs.values();
  auto pv = phi2.values();
  for (std::size_t k = 0; k < rv.size(); ++k) rv[k] += tau * pv[k];
  Field u1 = u0;
  nonadi_solve(ops, rhs, u1, totals);
  return {std::move(u0), std::move(u1), 1, tau};
}

SchemeState nonadi_step(const SchemeState& state, const StepOperators& ops, const Nonlinearity& g,
                        PcgTotals* totals) {
  const double tau2 = ops.tau_step * ops.tau_step;
  const double c = ops.implicit_factor;
  const Field lap_prev = ops.lap->apply(state.u_prev);
  Field rhs(state.u_curr.n());
  axpy_map(ops.exec, 2.0, state.u_curr, tau2, g.g, state.u_curr, rhs);
  auto rv = rhs.values();
  auto pv = state.u_prev.values();
  auto lv = lap_prev.values();
  for (std::size_t k = 0; k < rv.size(); ++k) rv[k] -= pv[k] + c * lv[k];
  Field next = state.u_curr;
  nonadi_solve(ops, rhs, next, totals);
  return {state.u_curr, std::move(next), state.step + 1,
          static_cast<double>(state.step + 1) * ops.tau_step};
}

// ---------------------------------------------------------------------------
// Driver

void check_finite(const SchemeState& state) {
  for (double v : state.u_curr.values()) {
    if (!std::isfinite(v) || std::abs(v) > 1e12)
      throw BlowUpError("solution blew up at step " + std::to_string(state.step) +
                        " (t = " + std::to_string(state.time) + ")");
  }
}

RunResult run(const Problem& problem, const Grid2D& grid, double tau_step, std::size_t m_steps,
              Scheme scheme, const Recorder& recorder, const StepOptions& options,
              std::shared_ptr<const Coeffs2D> coeffs) {
  if (m_steps < 1) throw ValidationError("run: need at least one step");
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const StepOperators ops = build_operators(problem, grid, tau_step, scheme, options, std::move(coeffs));
  const auto t1 = clock::now();

  const Nonlinearity& g = problem_g(problem);
  RunResult result;
  if (ops.gs) result.gs_p1 = ops.gs->p1;
  if (recorder) {
    Field u0 = sample(problem.phi1, grid);
    recorder(SchemeState{u0, u0, 0, 0.0}, ops);
  }

  SchemeState state = scheme == Scheme::sadi ? sadi_first_step(problem, ops)
                                             : nonadi_first_step(problem, ops, &result.pcg);
  check_finite(state);
  if (recorder) recorder(state, ops);
  for (std::size_t n = 1; n < m_steps; ++n) {
    state = scheme == Scheme::sadi ? sadi_step(state, ops, g) : nonadi_step(state, ops, g, &result.pcg);
    check_finite(state);
    if (recorder) recorder(state, ops);
  }
  const auto t2 = clock::now();

  result.state = std::move(state);
  result.setup_seconds = std::chrono::duration<double>(t1 - t0).count();
  result.loop_seconds = std::chrono::duration<double>(t2 - t1).count();
  return result;
}

}  // namespace fracwave
