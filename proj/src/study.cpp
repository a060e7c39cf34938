#include "fracwave/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "fracwave/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracwave {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct TimedCoeffs {
  std::shared_ptr<const Coeffs2D> coeffs;
  double seconds = 0.0;
};

TimedCoeffs timed_coeffs(FracOrder alpha, std::size_t n, const StepOptions& options) {
  const auto t0 = clock_type::now();
  auto c = std::make_shared<const Coeffs2D>(laplacian_coeffs_2d(alpha, n, options.coeffs));
  return {std::move(c), seconds_since(t0)};
}

struct FinalField {
  Field u;
  double setup = 0.0;
  double loop = 0.0;
};

std::optional<double> order_between(const StudyRow& prev, const StudyRow& cur) {
  if (std::abs(prev.step - 2.0 * cur.step) > 1e-12 * prev.step) return std::nullopt;
  if (!(prev.error > 0.0) || !(cur.error > 0.0)) return std::nullopt;
  return std::log2(prev.error / cur.error);
}

void fill_orders(std::vector<StudyRow>& rows) {
  for (std::size_t k = 1; k < rows.size(); ++k) rows[k].order = order_between(rows[k - 1], rows[k]);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

double refinement_error_time(const Field& coarse, const Field& fine, double h) {
  if (coarse.n() != fine.n()) throw ValidationError("refinement_error_time: grids differ");
  double s = 0.0;
  auto a = coarse.values();
  auto b = fine.values();
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(h * h * s);
}

double refinement_error_space(const Field& coarse, const Field& fine, double h) {
  const std::size_t n = coarse.n();
  if (fine.n() == n) return refinement_error_time(coarse, fine, h);
  if (fine.n() != 2 * n + 1)
    throw ValidationError("refinement_error_space: fine grid must have 2n+1 nodes per axis");
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      // coarse node i+1 sits on fine node 2(i+1)
      const double d = coarse(i, j) - fine(2 * i + 1, 2 * j + 1);
      s += d * d;
    }
  return std::sqrt(h * h * s);
}

std::size_t step_count(double t_final, double tau) {
  if (!(tau > 0.0) || !(t_final > 0.0)) throw ValidationError("step_count: need positive t_final and tau");
  const double m = t_final / tau;
  const double r = std::round(m);
  if (r < 1.0 || std::abs(m - r) > 1e-9 * std::max(1.0, m))
    throw ValidationError("t_final / tau = " + std::to_string(m) + " is not an integer");
  return static_cast<std::size_t>(r);
}

std::vector<StudyRow> error_time_refinement(const Problem& problem, double h,
                                            std::span<const double> taus, double t_final,
                                            Scheme scheme, const StepOptions& options) {
  std::vector<StudyRow> rows;
  if (taus.empty()) return rows;
  const Grid2D grid = Grid2D::from_spacing(problem.a, problem.b, h);
  for (double tau : taus) {
    step_count(t_final, tau);
    step_count(t_final, tau / 2.0);
  }
  const TimedCoeffs coeffs = timed_coeffs(problem.alpha, grid.n, options);

  std::map<std::size_t, FinalField> runs;
  auto final_field = [&](double tau) -> const FinalField& {
    const std::size_t m = step_count(t_final, tau);
    auto it = runs.find(m);
    if (it == runs.end()) {
      RunResult r = run(problem, grid, tau, m, scheme, {}, options, coeffs.coeffs);
      it = runs.emplace(m, FinalField{std::move(r.state.u_curr), r.setup_seconds + coeffs.seconds,
                                      r.loop_seconds})
               .first;
    }
    return it->second;
  };

  for (double tau : taus) {
    const FinalField& coarse = final_field(tau);
    const FinalField& fine = final_field(tau / 2.0);
    StudyRow row;
    row.scheme = scheme;
    row.alpha = problem.alpha;
    row.step = tau;
    row.error = refinement_error_time(coarse.u, fine.u, grid.h);
    row.cpu_setup = coarse.setup;
    row.cpu_loop = coarse.loop;
    rows.push_back(row);
  }
  fill_orders(rows);
  return rows;
}

std::vector<StudyRow> error_space_refinement(const Problem& problem, double tau,
                                             std::span<const double> hs, double t_final,
                                             Scheme scheme, const StepOptions& options) {
  std::vector<StudyRow> rows;
  if (hs.empty()) return rows;
  const std::size_t m = step_count(t_final, tau);
  for (double h : hs) {
    Grid2D::from_spacing(problem.a, problem.b, h);
    Grid2D::from_spacing(problem.a, problem.b, h / 2.0);
  }

  std::map<std::size_t, FinalField> runs;
  auto final_field = [&](double h) -> const FinalField& {
    const Grid2D grid = Grid2D::from_spacing(problem.a, problem.b, h);
    auto it = runs.find(grid.n);
    if (it == runs.end()) {
      const TimedCoeffs coeffs = timed_coeffs(problem.alpha, grid.n, options);
      RunResult r = run(problem, grid, tau, m, scheme, {}, options, coeffs.coeffs);
      it = runs.emplace(grid.n, FinalField{std::move(r.state.u_curr),
                                           r.setup_seconds + coeffs.seconds, r.loop_seconds})
               .first;
    }
    return it->second;
  };

  for (double h : hs) {
    const FinalField& coarse = final_field(h);
    const FinalField& fine = final_field(h / 2.0);
    StudyRow row;
    row.scheme = scheme;
    row.alpha = problem.alpha;
    row.step = h;
    row.error = refinement_error_space(coarse.u, fine.u, h);
    row.cpu_setup = coarse.setup;
    row.cpu_loop = coarse.loop;
    rows.push_back(row);
  }
  fill_orders(rows);
  return rows;
}

StudySpec table_spec(int table) {
  StudySpec s;
  s.alphas = {1.1, 1.5, 1.9};
  s.schemes = {Scheme::sadi, Scheme::nonadi};
  switch (table) {
    case 1:
      s.example = "sine-gordon";
      s.axis = Axis::time;
      s.fixed_step = 1.0 / 40.0;
      s.steps = {1.0 / 10.0, 1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0};
      s.t_final = 5.0;
      break;
    case 2:
      s.example = "sine-gordon";
      s.axis = Axis::space;
      s.fixed_step = 1.0 / 100.0;
      s.steps = {1.0, 1.0 / 2.0, 1.0 / 4.0, 1.0 / 8.0};
      s.t_final = 5.0;
      break;
    case 3:
      s.example = "klein-gordon";
      s.axis = Axis::time;
      s.fixed_step = 1.0 / 50.0;
      s.steps = {4.0 / 25.0, 2.0 / 25.0, 1.0 / 25.0, 1.0 / 50.0};
      s.t_final = 8.0;
      break;
    case 4:
      s.example = "klein-gordon";
      s.axis = Axis::space;
      s.fixed_step = 1.0 / 125.0;
      s.steps = {2.0 / 5.0, 1.0 / 5.0, 1.0 / 10.0, 1.0 / 20.0};
      s.t_final = 8.0;
      break;
    default:
      throw ValidationError("table must be 1, 2, 3 or 4");
  }
  return s;
}

double parse_number(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ValidationError("expected a number");
  auto parse_plain = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse number '" + std::string(text) + "'");
    }
    if (used != s.size()) throw ValidationError("cannot parse number '" + std::string(text) + "'");
    return v;
  };
  const auto slash = t.find('/');
  if (slash == std::string::npos) return parse_plain(t);
  const double num = parse_plain(trim(t.substr(0, slash)));
  const double den = parse_plain(trim(t.substr(slash + 1)));
  if (den == 0.0) throw ValidationError("division by zero in '" + std::string(text) + "'");
  return num / den;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ','))
    if (!trim(item).empty()) out.push_back(parse_number(item));
  return out;
}

StudySpec parse_study_spec(std::istream& in, StudySpec spec) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("study spec line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    std::replace(key.begin(), key.end(), '-', '_');

    if (key == "example") {
      spec.example = value;
    } else if (key == "axis") {
      if (value == "time") spec.axis = Axis::time;
      else if (value == "space") spec.axis = Axis::space;
      else throw ValidationError("study spec: axis must be time or space");
    } else if (key == "scheme") {
      spec.schemes.clear();
      std::istringstream items(value);
      std::string s;
      while (std::getline(items, s, ','))
        if (!trim(s).empty()) {
          if (trim(s) == "both") {
            spec.schemes = {Scheme::sadi, Scheme::nonadi};
          } else {
            spec.schemes.push_back(parse_scheme(trim(s)));
          }
        }
    } else if (key == "alphas") {
      spec.alphas = parse_number_list(value);
    } else if (key == "taus") {
      spec.axis = Axis::time;
      spec.steps = parse_number_list(value);
    } else if (key == "hs") {
      spec.axis = Axis::space;
      spec.steps = parse_number_list(value);
    } else if (key == "h") {
      spec.fixed_step = parse_number(value);
    } else if (key == "tau") {
      spec.fixed_step = parse_number(value);
    } else if (key == "t_final") {
      spec.t_final = parse_number(value);
    } else if (key == "kappa") {
      spec.kappa = parse_number(value);
    } else if (key == "amplitude") {
      spec.amplitude = parse_number(value);
    } else if (key == "tol") {
      spec.options.pcg_tol = parse_number(value);
    } else if (key == "gs_tol") {
      spec.options.gs_tol = parse_number(value);
    } else if (key == "threads") {
      spec.threads = static_cast<int>(parse_number(value));
    } else if (key == "timing_strict") {
      spec.timing_strict = value == "1" || value == "true" || value == "yes";
    } else {
      throw ValidationError("study spec line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return spec;
}

std::vector<StudyRow> run_study(const StudySpec& spec) {
  if (spec.schemes.empty()) throw ValidationError("study: no scheme selected");
  if (spec.alphas.empty()) return {};
  if (!(spec.fixed_step > 0.0)) throw ValidationError("study: the fixed step size must be positive");
  if (!(spec.t_final > 0.0)) throw ValidationError("study: t_final must be positive");
#ifdef _OPENMP
  if (spec.threads > 0) omp_set_num_threads(spec.threads);
#endif
  // Cells run one after another, so timings never share the machine with
  // another cell of the same study; timing_strict needs nothing further.
  std::vector<StudyRow> rows;
  for (Scheme scheme : spec.schemes) {
    for (double alpha : spec.alphas) {
      const Problem problem = example_problem(spec.example, alpha, spec.kappa, spec.amplitude);
      auto part = spec.axis == Axis::time
                      ? error_time_refinement(problem, spec.fixed_step, spec.steps, spec.t_final,
                                              scheme, spec.options)
                      : error_space_refinement(problem, spec.fixed_step, spec.steps, spec.t_final,
                                               scheme, spec.options);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  }
  return rows;
}

void write_study_csv(std::ostream& out, std::span<const StudyRow> rows) {
  out << "scheme,alpha,step,error,order,cpu_seconds,cpu_setup,cpu_loop\n";
  char buf[512];
  for (const auto& r : rows) {
    char order[64] = "";
    if (r.order) std::snprintf(order, sizeof order, "%.6f", *r.order);
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.10e,%s,%.6f,%.6f,%.6f\n",
                  std::string(to_string(r.scheme)).c_str(), r.alpha, r.step, r.error, order,
                  r.cpu_seconds(), r.cpu_setup, r.cpu_loop);
    out << buf;
  }
}

void write_study_csv(const std::string& path, std::span<const StudyRow> rows) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_study_csv(f, rows);
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace fracwave
