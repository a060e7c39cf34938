#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracwave/errors.hpp"
#include "fracwave/fraccoef.hpp"
#include "fracwave/io.hpp"
#include "fracwave/norms.hpp"
#include "fracwave/selftest.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/study.hpp"

namespace fs = std::filesystem;
using namespace fracwave;

namespace {

constexpr const char* kOutputEnv = "FRACWAVE_OUTPUT_DIR";
constexpr const char* kDefaultOutput = "fracwave_out";

enum Exit { ok = 0, failed = 1, validation = 2, convergence = 3, blowup = 4, io = 5 };

struct Common {
  std::string out_dir;
  int threads = 0;
  bool timing_strict = false;
};

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_e(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

// --out wins, then the environment, then the built-in default.
fs::path output_dir(const Common& c) {
  std::string dir = c.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv(kOutputEnv);
    dir = env && *env ? env : kDefaultOutput;
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory '" + dir + "'");
  return dir;
}

void apply_threads(const Common& c) {
  if (c.threads < 0) throw ValidationError("--threads must be >= 0");
#ifdef _OPENMP
  if (c.threads > 0) omp_set_num_threads(c.threads);
#endif
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string example = "sine-gordon";
  double alpha = 1.5;
  double kappa = 1.0;
  std::optional<double> amplitude;
  std::optional<double> a, b;
  std::string nonlinearity;
  std::string scheme = "sadi";
  std::string tau = "1/100";
  std::string h;
  std::size_t n = 0;
  double t_final = 5.0;
  std::string snapshots;
  std::string surface = "u";
  std::string format = "csv";
  std::string prefix;
  bool energy = false;
  bool serial = false;
  double pcg_tol = StepOptions{}.pcg_tol;
  int pcg_max_iter = StepOptions{}.pcg_max_iter;
  double gs_tol = StepOptions{}.gs_tol;
  std::size_t oversampling = LaplacianCoeffOptions{}.oversampling;
  std::size_t min_samples = LaplacianCoeffOptions{}.min_samples;
};

Problem make_problem(const SolveArgs& s) {
  Problem p;
  if (s.example == "none") {
    p.alpha = FracOrder(s.alpha);
    p.kappa = s.kappa;
  } else {
    p = example_problem(s.example, s.alpha, s.kappa, s.amplitude);
  }
  if (s.a) p.a = *s.a;
  if (s.b) p.b = *s.b;
  if (!s.nonlinearity.empty()) {
    find_nonlinearity(s.nonlinearity);
    p.nonlinearity = s.nonlinearity;
  }
  p.validate();
  return p;
}

int cmd_solve(const SolveArgs& s, const Common& c) {
  const Problem problem = make_problem(s);
  const Scheme scheme = parse_scheme(s.scheme);
  const Surface surface = parse_surface(s.surface);
  if (s.format != "csv" && s.format != "raw") throw ValidationError("--format must be csv or raw");
  if (!s.h.empty() && s.n > 0) throw ValidationError("give --h or --n, not both");
  const double tau = parse_number(s.tau);
  if (!(tau > 0.0)) throw ValidationError("--tau must be positive");
  const std::size_t m = step_count(s.t_final, tau);
  const Grid2D grid = s.n > 0 ? Grid2D::from_nodes(problem.a, problem.b, s.n)
                              : Grid2D::from_spacing(problem.a, problem.b,
                                                     parse_number(s.h.empty() ? "1/40" : s.h));
  if (s.pcg_tol <= 0.0 || s.gs_tol <= 0.0 || s.pcg_max_iter < 1)
    throw ValidationError("solver tolerances and iteration caps must be positive");

  struct Shot {
    double time;
    std::size_t step;
  };
  std::vector<Shot> shots;
  if (!s.snapshots.empty()) {
    for (double t : parse_number_list(s.snapshots)) {
      const double k = std::round(t / tau);
      if (t < 0.0 || std::abs(k * tau - t) > 1e-9 * std::max(1.0, t) ||
          k > static_cast<double>(m))
        throw ValidationError("snapshot time " + fmt_g(t) + " is not a step time in [0, " +
                              fmt_g(s.t_final) + "]");
      shots.push_back({t, static_cast<std::size_t>(k)});
    }
  }

  apply_threads(c);
  const fs::path dir = output_dir(c);
  const std::string prefix =
      s.prefix.empty() ? problem.name + "_a" + fmt_g(s.alpha) + "_" + std::string(to_string(scheme))
                       : s.prefix;

  StepOptions opts;
  opts.pcg_tol = s.pcg_tol;
  opts.pcg_max_iter = s.pcg_max_iter;
  opts.gs_tol = s.gs_tol;
  opts.coeffs.oversampling = s.oversampling;
  opts.coeffs.min_samples = s.min_samples;
  opts.exec = s.serial ? Exec::serial : Exec::parallel;

  const bool track_energy = s.energy || problem.nonlinearity == "zero";
  std::unique_ptr<NormOperators> norms;
  std::vector<std::string> energy_rows;
  double e_first = 0.0, e_drift = 0.0;
  double fin_l2 = 0.0, fin_a = 0.0, fin_max = 0.0;
  std::vector<std::string> written;

  auto recorder = [&](const SchemeState& st, const StepOperators& ops) {
    for (const Shot& shot : shots) {
      if (shot.step != st.step) continue;
      const Field values = transform_surface(st.u_curr, surface);
      const std::string base = (dir / (prefix + "_t" + fmt_g(shot.time))).string();
      if (s.format == "csv") {
        write_snapshot_csv(base + ".csv", values);
        written.push_back(base + ".csv");
      } else {
        SnapshotMeta meta{grid, shot.time, st.step, s.alpha, problem.kappa, problem.nonlinearity,
                          surface};
        write_snapshot_raw(base, values, meta);
        written.push_back(base + ".bin");
      }
    }
    if ((track_energy && st.step >= 1) || st.step == m) {
      if (!norms) norms = std::make_unique<NormOperators>(ops);
    }
    if (track_energy && st.step >= 1) {
      const double e = discrete_energy(st, ops, *norms);
      if (st.step == 1) e_first = e;
      e_drift = std::max(e_drift, std::abs(e - e_first) / std::max(std::abs(e_first), 1e-300));
      energy_rows.push_back(std::to_string(st.step) + "," + fmt_g(st.time) + "," + fmt_e(e));
    }
    if (st.step == m) {
      fin_l2 = std::sqrt(norm_squared(NormKind::l2, st.u_curr, *norms));
      fin_a = std::sqrt(norm_squared(NormKind::A, st.u_curr, *norms));
      fin_max = max_abs(st.u_curr);
    }
  };

  const RunResult r = run(problem, grid, tau, m, scheme, recorder, opts);

  std::ostringstream rep;
  rep << "problem = " << problem.name << "\n"
      << "nonlinearity = " << problem.nonlinearity << "\n"
      << "domain = (" << fmt_g(problem.a) << ", " << fmt_g(problem.b) << ")^2\n"
      << "alpha = " << fmt_g(s.alpha) << "\n"
      << "kappa = " << fmt_g(problem.kappa) << "\n"
      << "scheme = " << to_string(scheme) << "\n"
      << "n = " << grid.n << "\n"
      << "h = " << fmt_g(grid.h) << "\n"
      << "tau = " << fmt_g(tau) << "\n"
      << "steps = " << m << "\n"
      << "t_final = " << fmt_g(s.t_final) << "\n"
      << "final_l2 = " << fmt_e(fin_l2) << "\n"
      << "final_A = " << fmt_e(fin_a) << "\n"
      << "final_max_abs = " << fmt_e(fin_max) << "\n";
  if (scheme == Scheme::sadi) rep << "gs_p1 = " << fmt_e(r.gs_p1) << "\n";
  if (scheme == Scheme::nonadi) {
    rep << "pcg_solves = " << r.pcg.solves << "\n"
        << "pcg_iterations = " << r.pcg.iterations << "\n"
        << "pcg_max_iterations = " << r.pcg.max_iterations << "\n"
        << "pcg_worst_residual = " << fmt_e(r.pcg.worst_residual) << "\n";
  }
  if (track_energy) {
    rep << "energy_first = " << fmt_e(e_first) << "\n"
        << "energy_max_rel_drift = " << fmt_e(e_drift) << "\n";
    std::string csv = "step,time,energy\n";
    for (const auto& row : energy_rows) csv += row + "\n";
    write_text(dir / (prefix + "_energy.csv"), csv);
  }
  for (const auto& w : written) rep << "snapshot = " << fs::path(w).filename().string() << "\n";
  write_text(dir / (prefix + "_summary.txt"), rep.str());

  // Timings vary run to run; kept apart so the summary stays reproducible.
  std::ostringstream tim;
  tim << "setup_seconds = " << r.setup_seconds << "\n"
      << "loop_seconds = " << r.loop_seconds << "\n";
  write_text(dir / (prefix + "_timings.txt"), tim.str());

  std::cout << rep.str() << tim.str();
  return ok;
}

// ---------------------------------------------------------------------------
// study-time / study-space

struct StudyArgs {
  int table = 0;
  std::string spec_file;
  std::string example;
  std::string scheme;
  std::string alphas;
  std::string steps;
  std::string fixed;
  std::optional<double> t_final, kappa, amplitude, pcg_tol, gs_tol;
  std::string output;
};

int cmd_study(const StudyArgs& s, const Common& c, Axis axis) {
  StudySpec spec;
  spec.axis = axis;
  if (s.table != 0) spec = table_spec(s.table);
  if (!s.spec_file.empty()) {
    std::ifstream in(s.spec_file);
    if (!in) throw IoError("cannot read study spec '" + s.spec_file + "'");
    spec = parse_study_spec(in, spec);
  }
  if (!s.example.empty()) spec.example = s.example;
  if (!s.scheme.empty()) {
    std::istringstream in("scheme = " + s.scheme);
    spec = parse_study_spec(in, spec);
  }
  if (!s.alphas.empty()) spec.alphas = parse_number_list(s.alphas);
  if (!s.steps.empty()) spec.steps = parse_number_list(s.steps);
  if (!s.fixed.empty()) spec.fixed_step = parse_number(s.fixed);
  if (s.t_final) spec.t_final = *s.t_final;
  if (s.kappa) spec.kappa = *s.kappa;
  if (s.amplitude) spec.amplitude = *s.amplitude;
  if (s.pcg_tol) spec.options.pcg_tol = *s.pcg_tol;
  if (s.gs_tol) spec.options.gs_tol = *s.gs_tol;
  if (c.threads != 0) spec.threads = c.threads;
  if (c.timing_strict) spec.timing_strict = true;

  if (spec.axis != axis)
    throw ValidationError(std::string("the spec describes a ") +
                          (spec.axis == Axis::time ? "time" : "space") + " study");
  for (double a : spec.alphas) (void)FracOrder(a);
  if (!spec.alphas.empty() && spec.steps.empty()) throw ValidationError("study: no step sizes given");
  apply_threads(c);

  fs::path path;
  if (!s.output.empty()) {
    path = s.output;
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
    }
  } else {
    const std::string name = s.table != 0 ? "table" + std::to_string(s.table)
                                          : (axis == Axis::time ? "study_time" : "study_space");
    path = output_dir(c) / (name + ".csv");
  }

  const auto rows = run_study(spec);
  write_study_csv(path.string(), rows);
  write_study_csv(std::cout, rows);
  return ok;
}

// ---------------------------------------------------------------------------
// coeffs

struct CoeffArgs {
  double alpha = 1.5;
  std::size_t count = 16;
  std::string kind = "laplacian";
  std::size_t oversampling = LaplacianCoeffOptions{}.oversampling;
  std::size_t min_samples = LaplacianCoeffOptions{}.min_samples;
  std::string output;
};

int cmd_coeffs(const CoeffArgs& s, const Common& c) {
  const FracOrder alpha(s.alpha);
  if (s.count < 1) throw ValidationError("--count must be >= 1");
  if (s.kind != "riesz" && s.kind != "laplacian" && s.kind != "riesz-sum")
    throw ValidationError("--kind must be riesz, laplacian or riesz-sum");
  apply_threads(c);
  const fs::path path = !s.output.empty()
                            ? fs::path(s.output)
                            : output_dir(c) / ("coeffs_" + s.kind + "_a" + fmt_g(s.alpha) + ".csv");
  if (s.kind == "riesz") {
    write_coeffs_csv(path.string(), riesz_coeffs_1d(alpha, s.count));
  } else if (s.kind == "riesz-sum") {
    write_coeffs_csv(path.string(), riesz_sum_coeffs_2d(alpha, s.count));
  } else {
    LaplacianCoeffOptions o;
    o.oversampling = s.oversampling;
    o.min_samples = s.min_samples;
    write_coeffs_csv(path.string(), laplacian_coeffs_2d(alpha, s.count, o));
  }
  std::cout << path.string() << "\n";
  return ok;
}

int cmd_selftest(bool corrupt, const Common& c) {
  apply_threads(c);
  SelftestOptions o;
  o.corrupt_coefficients = corrupt;
  const SelftestReport r = run_selftest(o);
  std::cout << r.text();
  return r.passed() ? ok : failed;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_dir,
                  std::string("Output directory (default: $") + kOutputEnv + ", else " +
                      kDefaultOutput + ")");
  sub->add_option("--threads", c.threads, "OpenMP thread cap, 0 keeps the runtime default")
      ->capture_default_str();
  sub->add_flag("--timing-strict", c.timing_strict,
                "Run timed cells exclusively (cells already run one at a time)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional wave equation solver (S-ADI and non-ADI schemes)", "fracwave"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Common common;

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Run one simulation and write snapshots and a summary");
  add_common(solve, common);
  solve->add_option("--example", sa.example, "sine-gordon, klein-gordon, or none (zero data)");
  solve->add_option("--alpha", sa.alpha, "Fractional order in (1, 2]");
  solve->add_option("--kappa", sa.kappa, "Diffusion coefficient");
  solve->add_option("--amplitude", sa.amplitude,
                    "Initial-data amplitude (default: 1 sine-gordon, 2 klein-gordon)");
  solve->add_option("--a", sa.a, "Left end of the domain (default: example's)");
  solve->add_option("--b", sa.b, "Right end of the domain (default: example's)");
  solve->add_option("--nonlinearity", sa.nonlinearity,
                    "zero, sine_gordon or klein_gordon (default: example's)");
  solve->add_option("--scheme", sa.scheme, "sadi or nonadi");
  solve->add_option("--tau", sa.tau, "Time step (fractions such as 1/100 accepted)");
  auto* hopt = solve->add_option("--h", sa.h, "Grid spacing; must divide b - a (default 1/40)");
  auto* nopt = solve->add_option("--n", sa.n, "Interior nodes per axis (instead of --h)");
  hopt->excludes(nopt);
  solve->add_option("--t-final", sa.t_final, "Final time");
  solve->add_option("--snapshots", sa.snapshots, "Comma separated snapshot times");
  solve->add_option("--surface", sa.surface, "Snapshot transform: u, sin_u or sin_half_u");
  solve->add_option("--format", sa.format, "Snapshot format: csv or raw");
  solve->add_option("--prefix", sa.prefix, "File name prefix (default: <example>_a<alpha>_<scheme>)");
  solve->add_flag("--energy", sa.energy, "Record the energy trace even when g is nonzero");
  solve->add_flag("--serial", sa.serial, "Use the serial reference kernels");
  solve->add_option("--tol", sa.pcg_tol, "PCG relative residual tolerance (non-ADI)");
  solve->add_option("--max-iter", sa.pcg_max_iter, "PCG iteration cap per solve");
  solve->add_option("--gs-tol", sa.gs_tol, "Tolerance of the one-time Gohberg-Semencul setup solve");
  solve->add_option("--oversampling", sa.oversampling, "Symbol sampling factor for 2D coefficients");
  solve->add_option("--min-samples", sa.min_samples, "Lower bound on the symbol sampling size");

  StudyArgs st;
  auto add_study = [&](const char* name, const char* desc, const char* steps_flag,
                       const char* fixed_flag) {
    auto* sub = app.add_subcommand(name, desc);
    add_common(sub, common);
    sub->add_option("--table", st.table, "Preset 1..4 (0: none)");
    sub->add_option("--spec", st.spec_file, "key = value study file, applied after --table");
    sub->add_option("--example", st.example, "sine-gordon or klein-gordon (default sine-gordon)");
    sub->add_option("--scheme", st.scheme, "sadi, nonadi or both (default sadi)");
    sub->add_option("--alphas", st.alphas, "Comma separated orders");
    sub->add_option(steps_flag, st.steps, "Comma separated refined step sizes");
    sub->add_option(fixed_flag, st.fixed, "Fixed step size of the other axis");
    sub->add_option("--t-final", st.t_final, "Final time");
    sub->add_option("--kappa", st.kappa, "Diffusion coefficient (default 1)");
    sub->add_option("--amplitude", st.amplitude, "Initial-data amplitude (default: example's)");
    sub->add_option("--tol", st.pcg_tol, "PCG tolerance (default " + fmt_g(StepOptions{}.pcg_tol) + ")");
    sub->add_option("--gs-tol", st.gs_tol,
                    "Setup solve tolerance (default " + fmt_g(StepOptions{}.gs_tol) + ")");
    sub->add_option("--output", st.output, "CSV path (default: <out>/table<N>.csv or study_<axis>.csv)");
    return sub;
  };
  auto* stime = add_study("study-time", "Time-refinement error table", "--taus", "--h");
  auto* sspace = add_study("study-space", "Space-refinement error table", "--hs", "--tau");

  CoeffArgs ca;
  auto* coeffs = app.add_subcommand("coeffs", "Write a coefficient table as CSV");
  add_common(coeffs, common);
  coeffs->add_option("--alpha", ca.alpha, "Fractional order in (1, 2]");
  coeffs->add_option("--count", ca.count, "Coefficients per axis");
  coeffs->add_option("--kind", ca.kind, "riesz (1D), laplacian (2D) or riesz-sum (2D)");
  coeffs->add_option("--oversampling", ca.oversampling, "Symbol sampling factor");
  coeffs->add_option("--min-samples", ca.min_samples, "Lower bound on the sampling size");
  coeffs->add_option("--output", ca.output, "CSV path (default: <out>/coeffs_<kind>_a<alpha>.csv)");

  bool corrupt = false;
  auto* self = app.add_subcommand("selftest", "Fast invariant checks; exit status 0 on success");
  add_common(self, common);
  self->add_flag("--corrupt-coefficients", corrupt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : validation;
  }

  try {
    if (*solve) return cmd_solve(sa, common);
    if (*stime) return cmd_study(st, common, Axis::time);
    if (*sspace) return cmd_study(st, common, Axis::space);
    if (*coeffs) return cmd_coeffs(ca, common);
    if (*self) return cmd_selftest(corrupt, common);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return convergence;
  } catch (const BlowUpError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return blowup;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return failed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failed;
  }
  return failed;
}
