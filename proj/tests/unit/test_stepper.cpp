#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/norms.hpp"
#include "fracwave/stepper.hpp"

using namespace fracwave;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

Problem bump_problem(double alpha, std::string g = "sine_gordon") {
  Problem p;
  p.name = "bump";
  p.alpha = FracOrder(alpha);
  p.nonlinearity = std::move(g);
  p.phi1 = [](double x, double y) { return 0.8 * std::exp(-0.05 * (x * x + 2 * y * y)) + 0.1 * x / 10; };
  p.phi2 = [](double x, double y) { return 1.0 / std::cosh(std::hypot(x - 1, y)); };
  return p;
}

VectorXd g_of(const Nonlinearity& g, const VectorXd& u) {
  VectorXd out(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) out[k] = g.g(u[k]);
  return out;
}

struct Dense {
  MatrixXd dx, dy, lap, lhs;
  double c, tau;
};

Dense dense_for(const StepOperators& ops) {
  Dense d;
  auto o = oracle::dense_operators(ops.alpha, ops.grid.n, ops.grid.h, *ops.lap_coeffs);
  d.dx = o.dx;
  d.dy = o.dy;
  d.lap = o.lap;
  d.c = ops.implicit_factor;
  d.tau = ops.tau_step;
  const auto nn = d.dx.rows();
  d.lhs = MatrixXd::Identity(nn, nn) + d.c * (d.dx + d.dy) + d.c * d.c * d.dx * d.dy;
  return d;
}

}  // namespace

// One S-ADI step against the unfactored dense system written in terms of
// u^{n+1}: midpoint Riesz part, explicit remainder L - dx - dy, the
// (kappa^2 tau^2 / 4) dx dy perturbation and g(u^n).
TEST(SadiStep, GeneralStepMatchesDenseSolve) {
  for (double alpha : {1.2, 1.8}) {
    auto p = bump_problem(alpha);
    p.kappa = 1.3;
    auto grid = Grid2D::from_nodes(p.a, p.b, 12);
    auto ops = build_operators(p, grid, 0.2);
    auto d = dense_for(ops);
    const auto& g = find_nonlinearity(p.nonlinearity);
    std::mt19937_64 rng(7);
    SchemeState s{oracle::random_field(12, rng), oracle::random_field(12, rng), 3, 0.6};
    VectorXd um = oracle::to_vec(s.u_prev), un = oracle::to_vec(s.u_curr);
    const double t2 = d.tau * d.tau;
    VectorXd rhs = 2 * un - um - d.c * (d.dx + d.dy) * um - t2 * p.kappa * (d.lap - d.dx - d.dy) * un +
                   t2 * g_of(g, un) + d.c * d.c * d.dx * d.dy * (2 * un - um);
    VectorXd ref = d.lhs.partialPivLu().solve(rhs);
    auto next = sadi_step(s, ops, g);
    EXPECT_LT(oracle::rel_err(oracle::to_vec(next.u_curr), ref), 1e-10) << alpha;
    EXPECT_TRUE(next.u_prev == s.u_curr);
    EXPECT_EQ(next.step, 4u);
  }
}

TEST(SadiStep, FirstStepMatchesDenseSolve) {
  for (double alpha : {1.1, 1.5, 1.9}) {
    auto p = bump_problem(alpha);
    auto grid = Grid2D::from_nodes(p.a, p.b, 12);
    auto ops = build_operators(p, grid, 0.25);
    auto d = dense_for(ops);
    const auto& g = find_nonlinearity(p.nonlinearity);
    VectorXd u0 = oracle::to_vec(sample(p.phi1, grid));
    VectorXd v0 = oracle::to_vec(sample(p.phi2, grid));
    VectorXd rhs = u0 + d.tau * v0 + d.c * d.c * d.dx * d.dy * u0 - d.c * (d.lap - d.dx - d.dy) * u0 +
                   0.5 * d.tau * d.tau * g_of(g, u0);
    VectorXd ref = d.lhs.partialPivLu().solve(rhs);
    auto s = sadi_first_step(p, ops);
    EXPECT_LT(oracle::rel_err(oracle::to_vec(s.u_curr), ref), 1e-10) << alpha;
    EXPECT_LT(oracle::rel_err(oracle::to_vec(s.u_prev), u0), 1e-15);
    EXPECT_EQ(s.step, 1u);
    EXPECT_DOUBLE_EQ(s.time, 0.25);
  }
}

TEST(SadiStep, AdiSolveIsFactoredInverse) {
  auto p = bump_problem(1.5);
  auto grid = Grid2D::from_nodes(p.a, p.b, 10);
  auto ops = build_operators(p, grid, 0.3);
  auto d = dense_for(ops);
  std::mt19937_64 rng(1);
  Field b = oracle::random_field(10, rng);
  VectorXd ref = d.lhs.partialPivLu().solve(oracle::to_vec(b));
  EXPECT_LT(oracle::rel_err(oracle::to_vec(adi_solve(ops, b)), ref), 1e-12);
}

TEST(NonAdiStep, MatchesDenseSolve) {
  for (double alpha : {1.1, 1.6}) {
    auto p = bump_problem(alpha, "klein_gordon");
    auto grid = Grid2D::from_nodes(p.a, p.b, 16);
    StepOptions opt;
    opt.pcg_tol = 1e-13;
    auto ops = build_operators(p, grid, 0.2, Scheme::nonadi, opt);
    auto d = dense_for(ops);
    const auto nn = d.lap.rows();
    MatrixXd lhs = MatrixXd::Identity(nn, nn) + d.c * d.lap;
    const auto& g = find_nonlinearity(p.nonlinearity);

    VectorXd u0 = oracle::to_vec(sample(p.phi1, grid));
    VectorXd v0 = oracle::to_vec(sample(p.phi2, grid));
    VectorXd ref1 = lhs.ldlt().solve(u0 + d.tau * v0 + 0.5 * d.tau * d.tau * g_of(g, u0));
    PcgTotals totals;
    auto s1 = nonadi_first_step(p, ops, &totals);
    EXPECT_LT(oracle::rel_err(oracle::to_vec(s1.u_curr), ref1), 1e-9);

    VectorXd um = oracle::to_vec(s1.u_prev), un = oracle::to_vec(s1.u_curr);
    VectorXd ref2 = lhs.ldlt().solve(2 * un - um - d.c * d.lap * um + d.tau * d.tau * g_of(g, un));
    auto s2 = nonadi_step(s1, ops, g, &totals);
    EXPECT_LT(oracle::rel_err(oracle::to_vec(s2.u_curr), ref2), 1e-9);
    EXPECT_EQ(totals.solves, 2);
    EXPECT_GT(totals.iterations, 0);
  }
}

TEST(Stepper, ZeroDataStaysZero) {
  Problem p;
  p.alpha = FracOrder(1.5);
  p.nonlinearity = "sine_gordon";
  auto grid = Grid2D::from_nodes(p.a, p.b, 15);
  for (auto scheme : {Scheme::sadi, Scheme::nonadi}) {
    auto r = run(p, grid, 0.1, 20, scheme);
    EXPECT_EQ(max_abs(r.state.u_curr), 0.0);
  }
}

TEST(Stepper, KappaZeroIsFreeMotion) {
  // With kappa = 0 and g = 0 the scheme is exact leapfrog for u_tt = 0: u = phi1 + t phi2.
  auto p = bump_problem(1.5, "zero");
  p.kappa = 0.0;
  auto grid = Grid2D::from_nodes(p.a, p.b, 11);
  auto r = run(p, grid, 0.1, 30, Scheme::sadi);
  Field expect = sample(p.phi1, grid) + 3.0 * sample(p.phi2, grid);
  EXPECT_LT(max_abs_diff(r.state.u_curr, expect), 1e-12);
}

TEST(Stepper, LinearProblemIsLinear) {
  auto p = bump_problem(1.7, "zero");
  auto q = p;
  q.phi1 = [f = p.phi1](double x, double y) { return 2.5 * f(x, y); };
  q.phi2 = [f = p.phi2](double x, double y) { return 2.5 * f(x, y); };
  auto grid = Grid2D::from_nodes(p.a, p.b, 14);
  for (auto scheme : {Scheme::sadi, Scheme::nonadi}) {
    StepOptions opt;
    opt.pcg_tol = 1e-13;
    auto a = run(p, grid, 0.2, 15, scheme, {}, opt).state.u_curr;
    auto b = run(q, grid, 0.2, 15, scheme, {}, opt).state.u_curr;
    EXPECT_LT(max_abs_diff(2.5 * a, b), 1e-10 * max_abs(b));
  }
}

TEST(Stepper, UnconditionallyStableForLargeSteps) {
  auto p = bump_problem(1.9, "zero");
  auto grid = Grid2D::from_nodes(p.a, p.b, 31);
  // tau / h ~ 16: far beyond any explicit limit.
  auto r = run(p, grid, 10.0, 500, Scheme::sadi);
  const double init = std::max(max_abs(sample(p.phi1, grid)), 1.0);
  EXPECT_LT(max_abs(r.state.u_curr), 100 * init);
}

TEST(Stepper, PerturbationStaysBounded) {
  auto p = bump_problem(1.5, "zero");
  auto q = p;
  q.phi1 = [f = p.phi1](double x, double y) { return f(x, y) + 1e-6 * std::exp(-x * x - y * y); };
  auto grid = Grid2D::from_nodes(p.a, p.b, 21);
  double worst = 0;
  Recorder rec_p, rec_q;
  std::vector<Field> traj;
  run(p, grid, 0.5, 80, Scheme::sadi, [&](const SchemeState& s, const StepOperators&) { traj.push_back(s.u_curr); });
  std::size_t k = 0;
  run(q, grid, 0.5, 80, Scheme::sadi, [&](const SchemeState& s, const StepOperators&) {
    worst = std::max(worst, max_abs_diff(s.u_curr, traj[k++]));
  });
  EXPECT_GT(worst, 0.0);
  EXPECT_LT(worst, 1e-4);
}

TEST(Stepper, SadiAndNonAdiDifferAtSecondOrder) {
  auto p = sine_gordon_example(1.5);
  auto grid = Grid2D::from_nodes(p.a, p.b, 19);
  std::vector<double> diffs;
  for (double tau : {0.2, 0.1, 0.05}) {
    auto steps = static_cast<std::size_t>(std::lround(1.0 / tau));
    StepOptions opt;
    opt.pcg_tol = 1e-13;
    auto a = run(p, grid, tau, steps, Scheme::sadi, {}, opt).state.u_curr;
    auto b = run(p, grid, tau, steps, Scheme::nonadi, {}, opt).state.u_curr;
    diffs.push_back(max_abs_diff(a, b));
  }
  for (std::size_t k = 1; k < diffs.size(); ++k) {
    const double ratio = diffs[k - 1] / diffs[k];
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
  }
}

TEST(Stepper, RecorderSeesEveryStep) {
  auto p = sine_gordon_example(1.5);
  auto grid = Grid2D::from_nodes(p.a, p.b, 9);
  std::vector<std::size_t> seen;
  auto r = run(p, grid, 0.1, 6, Scheme::sadi, [&](const SchemeState& s, const StepOperators&) { seen.push_back(s.step); });
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_NEAR(r.state.time, 0.6, 1e-14);
  EXPECT_GT(r.gs_p1, 0.0);
}

TEST(Stepper, ReusedCoefficientsGiveIdenticalResults) {
  auto p = sine_gordon_example(1.5);
  auto grid = Grid2D::from_nodes(p.a, p.b, 9);
  auto big = std::make_shared<const Coeffs2D>(laplacian_coeffs_2d(FracOrder(1.5), 9));
  auto a = run(p, grid, 0.1, 5).state.u_curr;
  auto b = run(p, grid, 0.1, 5, Scheme::sadi, {}, {}, big).state.u_curr;
  EXPECT_TRUE(a == b);
}

TEST(Stepper, BlowUpDetected) {
  register_nonlinearity("explosive_test", [](double u) { return 1e3 * u * u * u; });
  auto p = bump_problem(1.5, "explosive_test");
  auto grid = Grid2D::from_nodes(p.a, p.b, 9);
  EXPECT_THROW(run(p, grid, 0.5, 200), BlowUpError);
}

TEST(Stepper, NonAdiStallThrows) {
  auto p = sine_gordon_example(1.5);
  auto grid = Grid2D::from_nodes(p.a, p.b, 15);
  StepOptions opt;
  opt.pcg_tol = 1e-15;
  opt.pcg_max_iter = 1;
  EXPECT_THROW(run(p, grid, 1.0, 3, Scheme::nonadi, {}, opt), ConvergenceError);
}

TEST(Stepper, Validation) {
  auto p = sine_gordon_example(1.5);
  auto grid = Grid2D::from_nodes(p.a, p.b, 9);
  EXPECT_THROW(build_operators(p, grid, 0.0), ValidationError);
  EXPECT_THROW(build_operators(p, Grid2D::from_nodes(0, 1, 9), 0.1), ValidationError);
  EXPECT_THROW(run(p, grid, 0.1, 0), ValidationError);
  EXPECT_THROW(example_problem("heat", 1.5), ValidationError);
  EXPECT_THROW(find_nonlinearity("nope"), ValidationError);
  EXPECT_THROW(parse_scheme("crank"), ValidationError);
  EXPECT_EQ(parse_scheme("S-ADI"), Scheme::sadi);
  EXPECT_EQ(parse_scheme("non-adi"), Scheme::nonadi);
  auto bad = p;
  bad.kappa = -1;
  EXPECT_THROW(bad.validate(), ValidationError);
  auto ops = build_operators(p, grid, 0.1, Scheme::nonadi);
  EXPECT_THROW(adi_solve(ops, Field(9)), ValidationError);
}

TEST(Stepper, ExamplesAndNonlinearities) {
  auto sg = example_problem("sine_gordon", 1.5);
  EXPECT_EQ(sg.nonlinearity, "sine_gordon");
  EXPECT_NEAR(sg.phi2(0.0, 0.0), 1.0, 1e-15);
  EXPECT_FALSE(sg.phi1);
  auto kg = example_problem("Klein-Gordon", 1.1);
  EXPECT_NEAR(kg.phi1(0.0, 0.0), 2.0 / std::cosh(1.0), 1e-15);
  EXPECT_NEAR(example_problem("klein_gordon", 1.1, 1.0, 1.0).phi1(0.0, 0.0), 1.0 / std::cosh(1.0), 1e-15);
  EXPECT_NEAR(example_problem("sine_gordon", 1.1, 1.0, 3.0).phi2(0.0, 0.0), 3.0, 1e-15);
  EXPECT_EQ(example_amplitude("sine-gordon"), 1.0);
  EXPECT_EQ(example_amplitude("klein-gordon"), 2.0);
  EXPECT_DOUBLE_EQ(find_nonlinearity("sine-gordon").g(0.5), -std::sin(0.5));
  EXPECT_DOUBLE_EQ(find_nonlinearity("klein_gordon").g(2.0), -8.0);
  EXPECT_EQ(find_nonlinearity("zero").g(3.0), 0.0);
}
