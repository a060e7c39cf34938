#pragma once

// Time integration of
//   u_tt = -kappa (-Delta)^{alpha/2} u + g(u)   on (a,b)^2,  u = 0 outside,
//   u(.,0) = phi1,  u_t(.,0) = phi2.
//
// S-ADI: the Riesz part delta_x + delta_y is treated implicitly and factored
// per direction (with an O(tau^2) remainder), the rest of the fractional
// Laplacian and g explicitly. Each step solves
//   (I + c delta_x)(I + c delta_y) w = B,   c = tau^2 kappa / 2,
// with w = u^{n+1} - 2u^n + u^{n-1} (n >= 1) or w = u^1 - u^0 (n = 0) and
//   B^n = -tau^2 kappa L u^n + tau^2 g(u^n)                          (n >= 1)
//   B^0 = tau phi2 - (tau^2/2) kappa L u^0 + (tau^2/2) g(u^0).
//
// Non-ADI baseline: (I + c L) u^{n+1} = 2u^n - u^{n-1} - c L u^{n-1} + tau^2 g(u^n)
// and (I + c L) u^1 = u^0 + tau phi2 + (tau^2/2) g(u^0), solved by tau-PCG.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "fracwave/bttb.hpp"
#include "fracwave/field.hpp"
#include "fracwave/fraccoef.hpp"
#include "fracwave/kernels.hpp"
#include "fracwave/pcg.hpp"
#include "fracwave/tau.hpp"
#include "fracwave/toeplitz.hpp"

namespace fracwave {

// ---------------------------------------------------------------------------
// Problem definition

struct Nonlinearity {
  std::string id;
  std::function<double(double)> g;
};

/// Built-ins: "zero", "sine_gordon" (g = -sin u), "klein_gordon" (g = -u^3).
const Nonlinearity& find_nonlinearity(std::string_view id);
/// Adds or replaces a named nonlinearity (e.g. an interpolated table).
void register_nonlinearity(std::string id, std::function<double(double)> g);

Field evaluate_nonlinearity(const Nonlinearity& g, const Field& u);
Field evaluate_nonlinearity(std::string_view id, const Field& u);

using InitialData = std::function<double(double, double)>;

struct Problem {
  std::string name = "custom";
  double a = -10.0;
  double b = 10.0;
  double kappa = 1.0;
  FracOrder alpha{1.5};
  std::string nonlinearity = "zero";
  InitialData phi1;  // empty means identically zero
  InitialData phi2;

  void validate() const;
};

/// g = -sin u, phi1 = 0, phi2 = A sech(sqrt(x^2 + y^2)) on (-10,10)^2.
Problem sine_gordon_example(double alpha, double kappa = 1.0, double amplitude = 1.0);
/// g = -u^3, phi1 = A sech(cosh(x^2 + y^2)), phi2 = 0 on (-10,10)^2.
/// The default A = 2 is the amplitude behind the reference Klein-Gordon
/// error tables; A = 1 is the formula as usually written.
Problem klein_gordon_example(double alpha, double kappa = 1.0, double amplitude = 2.0);
/// Default amplitude A of a named example (1 for sine-Gordon, 2 for Klein-Gordon).
double example_amplitude(std::string_view name);
/// Looks up "sine-gordon" / "klein-gordon" (underscores accepted); the
/// amplitude defaults to example_amplitude(name).
Problem example_problem(std::string_view name, double alpha, double kappa = 1.0,
                        std::optional<double> amplitude = {});

/// Interior samples of an initial-data function (zero when f is empty).
Field sample(const InitialData& f, const Grid2D& grid);

// ---------------------------------------------------------------------------
// Operators

enum class Scheme { sadi, nonadi };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

struct StepOptions {
  double gs_tol = 1e-13;   // one-time H^{-1} e_1 solve
  double pcg_tol = 1e-11;  // per-step non-ADI solves
  int pcg_max_iter = 1000;
  LaplacianCoeffOptions coeffs{};
  Exec exec = Exec::parallel;
};

struct StepOperators {
  Grid2D grid;
  FracOrder alpha{1.5};
  double kappa = 1.0;
  double tau_step = 0.0;
  /// c = tau^2 kappa / 2.
  double implicit_factor = 0.0;
  Exec exec = Exec::parallel;
  double pcg_tol = 1e-11;
  int pcg_max_iter = 1000;

  Coeffs1D riesz{FracOrder{1.5}, {}};
  std::shared_ptr<const Coeffs2D> lap_coeffs;
  /// L_h^alpha, including h^{-alpha} (kappa not included).
  std::shared_ptr<const BttbOperator> lap;
  /// First column of H = I + c h^{-alpha} [a_|i-j|].
  SymToeplitz h_matrix;
  /// Present when built for the S-ADI scheme.
  std::optional<GSData> gs;
  /// Present when built for the non-ADI scheme.
  std::optional<TauSpec2D> tau2d;
};

/// Generates (or reuses) coefficients, the BTTB operator for L_h^alpha and
/// the scheme's solver data.
StepOperators build_operators(const Problem& problem, const Grid2D& grid, double tau_step,
                              Scheme scheme = Scheme::sadi, const StepOptions& options = {},
                              std::shared_ptr<const Coeffs2D> coeffs = nullptr);

// ---------------------------------------------------------------------------
// Stepping

struct SchemeState {
  Field u_prev;  // u^{n-1}
  Field u_curr;  // u^n
  std::size_t step = 0;
  double time = 0.0;
};

Field rhs_general(const SchemeState& state, const StepOperators& ops, const Nonlinearity& g);
Field rhs_first(const Field& u0, const StepOperators& ops, const Nonlinearity& g,
                const Field& phi2);

/// Solves (I + c delta_x)(I + c delta_y) w = B: x-sweep, transpose, sweep,
/// transpose back; 2n Gohberg-Semencul solves in all.
Field adi_solve(const StepOperators& ops, const Field& b);
Field adi_solve(const StepOperators& ops, const Field& b, Exec exec);

SchemeState sadi_first_step(const Problem& problem, const StepOperators& ops);
SchemeState sadi_step(const SchemeState& state, const StepOperators& ops, const Nonlinearity& g);

struct PcgTotals {
  long solves = 0;
  long iterations = 0;
  int max_iterations = 0;
  double worst_residual = 0.0;
  void add(const PcgReport& r);
};

SchemeState nonadi_first_step(const Problem& problem, const StepOperators& ops,
                              PcgTotals* totals = nullptr);
SchemeState nonadi_step(const SchemeState& state, const StepOperators& ops, const Nonlinearity& g,
                        PcgTotals* totals = nullptr);

/// Raises BlowUpError when any value is non-finite or exceeds 1e12 in magnitude.
void check_finite(const SchemeState& state);

struct RunResult {
  SchemeState state;
  double setup_seconds = 0.0;
  double loop_seconds = 0.0;
  PcgTotals pcg;
  double gs_p1 = 0.0;
};

/// Invoked after every completed step (and once with the initial state, n = 0).
using Recorder = std::function<void(const SchemeState&, const StepOperators&)>;

/// First step then m_steps - 1 general steps.
RunResult run(const Problem& problem, const Grid2D& grid, double tau_step, std::size_t m_steps,
              Scheme scheme = Scheme::sadi, const Recorder& recorder = {},
              const StepOptions& options = {}, std::shared_ptr<const Coeffs2D> coeffs = nullptr);

}  // namespace fracwave
