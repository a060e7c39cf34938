#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

#include "fracwave/kernels.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/toeplitz.hpp"

using namespace fracwave;

namespace {

// Operators are cached per (n, scheme) so setup stays out of the timed loops.
const StepOperators& operators(std::size_t n, Scheme scheme) {
  static std::map<std::pair<std::size_t, int>, std::unique_ptr<StepOperators>> cache;
  auto& slot = cache[{n, static_cast<int>(scheme)}];
  if (!slot) {
    const Problem p = sine_gordon_example(1.5);
    slot = std::make_unique<StepOperators>(
        build_operators(p, Grid2D::from_nodes(p.a, p.b, n), 0.01, scheme));
  }
  return *slot;
}

Field noise(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Field f(n);
  for (double& v : f.values()) v = d(rng);
  return f;
}

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

void BM_SolveLines(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto& ops = operators(n, Scheme::sadi);
  const Field src = noise(n);
  for (auto _ : st) {
    Field f = src;
    if (exec_of(st) == Exec::parallel) kernels::solve_lines(*ops.gs, f);
    else kernels::serial::solve_lines(*ops.gs, f);
    benchmark::DoNotOptimize(f.values().data());
  }
}

void BM_AdiSolve(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto& ops = operators(n, Scheme::sadi);
  const Field b = noise(n);
  for (auto _ : st) benchmark::DoNotOptimize(adi_solve(ops, b, exec_of(st)));
}

void BM_Step(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Scheme scheme = st.range(1) ? Scheme::nonadi : Scheme::sadi;
  const auto& ops = operators(n, scheme);
  const Problem p = sine_gordon_example(1.5);
  const Nonlinearity& g = find_nonlinearity(p.nonlinearity);
  const SchemeState s0 = scheme == Scheme::sadi ? sadi_first_step(p, ops) : nonadi_first_step(p, ops);
  SchemeState s = scheme == Scheme::sadi ? sadi_step(s0, ops, g) : nonadi_step(s0, ops, g);
  for (auto _ : st) {
    s = scheme == Scheme::sadi ? sadi_step(s, ops, g) : nonadi_step(s, ops, g);
    benchmark::DoNotOptimize(s.u_curr.values().data());
  }
  st.SetLabel(scheme == Scheme::sadi ? "sadi" : "nonadi");
}

// Lengths that are and are not 7-smooth; the latter go through the padded circulant path.
void BM_GsSolve(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto& gs = *operators(n, Scheme::sadi).gs;
  const Field v = noise(n);
  std::vector<double> out(n);
  GsWorkspace ws;
  for (auto _ : st) {
    gs_solve(gs, v.line(0), out, ws);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetLabel(gs.embed_size ? "embedded" : "direct");
}

}  // namespace

BENCHMARK(BM_SolveLines)->ArgsProduct({{159, 399, 799}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdiSolve)->ArgsProduct({{159, 399, 799}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step)->ArgsProduct({{79, 159, 399}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GsSolve)->Arg(159)->Arg(160)->Arg(799)->Arg(800)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
