#pragma once

// Self-refinement convergence studies.
//
//   Error_1(tau, h) = sqrt(h^2 sum |u^M(tau, h) - u^{2M}(tau/2, h)|^2)
//   Error_2(tau, h) = sqrt(h^2 sum |u^M_{ij}(tau, h) - u^M_{2i,2j}(tau, h/2)|^2)
//   Order = log2(Error(previous row) / Error(this row)), empty on the first row.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracwave/stepper.hpp"

namespace fracwave {

enum class Axis { time, space };

struct StudyRow {
  Scheme scheme = Scheme::sadi;
  double alpha = 0.0;
  double step = 0.0;  // tau for time studies, h for space studies
  double error = 0.0;
  std::optional<double> order;
  double cpu_setup = 0.0;  // coefficients + solver setup of the run at `step`
  double cpu_loop = 0.0;   // stepping loop of the run at `step`

  double cpu_seconds() const noexcept { return cpu_setup + cpu_loop; }
};

/// sqrt(h^2 sum (a - b)^2) over identically shaped fields.
double refinement_error_time(const Field& coarse, const Field& fine, double h);
/// Same, comparing coarse node i with fine node 2i (fine grid has 2n+1 nodes).
double refinement_error_space(const Field& coarse, const Field& fine, double h);

/// Number of steps t_final / tau; throws unless it is an integer >= 1.
std::size_t step_count(double t_final, double tau);

std::vector<StudyRow> error_time_refinement(const Problem& problem, double h,
                                            std::span<const double> taus, double t_final,
                                            Scheme scheme = Scheme::sadi,
                                            const StepOptions& options = {});

std::vector<StudyRow> error_space_refinement(const Problem& problem, double tau,
                                             std::span<const double> hs, double t_final,
                                             Scheme scheme = Scheme::sadi,
                                             const StepOptions& options = {});

struct StudySpec {
  std::string example = "sine-gordon";
  Axis axis = Axis::time;
  std::vector<Scheme> schemes{Scheme::sadi};
  std::vector<double> alphas;
  std::vector<double> steps;  // refined quantity
  double fixed_step = 0.0;    // h for time studies, tau for space studies
  double t_final = 0.0;
  double kappa = 1.0;
  std::optional<double> amplitude;  // empty: the example's default
  StepOptions options{};
  int threads = 0;  // 0: leave the OpenMP default
  bool timing_strict = false;
};

/// Configurations of the four reference tables (1, 2: sine-Gordon time and
/// space; 3, 4: Klein-Gordon time and space), all three orders.
StudySpec table_spec(int table);

/// Reads flat `key = value` lines (keys: example, axis, scheme, alphas, taus,
/// hs, h, tau, t_final, kappa, amplitude, tol, gs_tol, threads,
/// timing-strict).
/// Lists are comma separated; fractions such as 1/40 are accepted.
StudySpec parse_study_spec(std::istream& in, StudySpec base = {});

/// Parses "0.25", "1/40" or "2/5".
double parse_number(std::string_view text);
std::vector<double> parse_number_list(std::string_view text);

/// Rows in declaration order: scheme-major, then alpha, then step.
std::vector<StudyRow> run_study(const StudySpec& spec);

void write_study_csv(std::ostream& out, std::span<const StudyRow> rows);
/// Throws IoError if the file cannot be written.
void write_study_csv(const std::string& path, std::span<const StudyRow> rows);

}  // namespace fracwave
