#include <benchmark/benchmark.h>

#include "kappa/closed_set.hpp"
#include "kappa/duality.hpp"
#include "kappa/geometry.hpp"
#include "kappa/kappa_norm.hpp"
#include "kappa/operator_norm.hpp"
#include "kappa/order_rep.hpp"
#include "kappa/set_flow.hpp"

namespace {

using namespace kappa;

ClosedSet random_polygon(Rng& rng, int points) {
  std::vector<Vector> pts;
  for (int i = 0; i < points; ++i) pts.push_back(rng.box(2, -2.0, 2.0));
  return ClosedSet::polytope(convex_hull_2d(pts));
}

void bm_rho_polytope(benchmark::State& state) {
  Rng rng(11);
  const ClosedSet poly = random_polygon(rng, static_cast<int>(state.range(0)));
  const Vector x = {3.5, -2.25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho(x, poly));
  }
}
BENCHMARK(bm_rho_polytope)->Arg(8)->Arg(64)->Arg(512);

void bm_minkowski_sum(benchmark::State& state) {
  Rng rng(12);
  const ClosedSet a = random_polygon(rng, static_cast<int>(state.range(0)));
  const ClosedSet b = random_polygon(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(minkowski_sum_cl(a, b));
  }
}
BENCHMARK(bm_minkowski_sum)->Arg(8)->Arg(32);

void bm_metric_d(benchmark::State& state) {
  Rng rng(13);
  const ClosedSet a = random_polygon(rng, static_cast<int>(state.range(0)));
  const ClosedSet b = random_polygon(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric_d(a, b));
  }
}
BENCHMARK(bm_metric_d)->Arg(8)->Arg(64);

void bm_kappa_form(benchmark::State& state) {
  Rng rng(14);
  const ClosedSet a = random_polygon(rng, static_cast<int>(state.range(0)));
  const ClosedSet b = random_polygon(rng, static_cast<int>(state.range(0)));
  const Vector x = {3.0, 3.0};
  const Vector y = {-3.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kappa_form(x, a, y, b));
  }
}
BENCHMARK(bm_kappa_form)->Arg(8)->Arg(32);

void bm_rho_l_sampled(benchmark::State& state) {
  const Operator a(Matrix{{1.0, 0.5}, {0.0, 1.0}});
  const OperatorSet s = OperatorSet::finite(
      {Operator(Matrix{{2.0, 0.0}, {1.0, 1.0}}),
       Operator(Matrix{{1.0, -1.0}, {0.0, 2.0}}),
       Operator(Matrix{{3.0, 0.0}, {0.0, 0.5}})});
  const ProbeFamily family =
      ProbeFamily::default_family(21, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho_L_sampled(a, s, family));
  }
}
BENCHMARK(bm_rho_l_sampled)->Arg(4)->Arg(16);

void bm_set_ode_step(benchmark::State& state) {
  const VectorField f = VectorField::identity(2);
  const ClosedSet a0 =
      ClosedSet::polytope({{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}});
  SolverConfig cfg;
  cfg.h = 1.0 / static_cast<double>(state.range(0));
  std::vector<double> times;
  std::vector<ClosedSet> sets;
  for (long i = 0; i <= state.range(0); ++i) {
    times.push_back(static_cast<double>(i) * cfg.h);
    sets.push_back(a0);
  }
  const SetTrajectory guess = SetTrajectory::make(times, sets);
  for (auto _ : state) {
    benchmark::DoNotOptimize(picard_step_set(f, a0, guess, cfg));
  }
}
BENCHMARK(bm_set_ode_step)->Arg(32)->Arg(128);

void bm_monotone_projection(benchmark::State& state) {
  Rng rng(15);
  const int n = static_cast<int>(state.range(0));
  std::vector<std::string> ids;
  std::map<std::string, double> values;
  for (int i = 0; i < n; ++i) {
    ids.push_back("x" + std::to_string(i));
    values[ids.back()] = rng.uniform(-3.0, 3.0);
  }
  const ChainFamily chains = ChainFamily::of({ids});
  const FunctionOnT g = FunctionOnT::of(values);
  for (auto _ : state) {
    benchmark::DoNotOptimize(monotone_project_sup(g, chains));
  }
}
BENCHMARK(bm_monotone_projection)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
