#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "kappa/kappa_norm.hpp"
#include "kappa/set_flow.hpp"
#include "support/oracles.hpp"

using namespace kappa;

namespace {

ClosedSet sym_box(double w1, double w2) {
  return ClosedSet::polytope({{-w1, -w2}, {w1, -w2}, {w1, w2}, {-w1, w2}});
}

ClosedSet unit_box() {
  return ClosedSet::polytope({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

double sup_change(const SetTrajectory& a, const SetTrajectory& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, metric_d(a.sets[i], b.sets[i]));
  }
  return worst;
}

}  // namespace

TEST_SUITE("set-flow") {

TEST_CASE("lipschitz ratio matches the homogeneity of linear maps") {
  const VectorField twice = VectorField::affine(
      Matrix{{2, 0}, {0, 2}}, Vector{0, 0});
  CHECK(lipschitz_ratio(twice, ClosedSet::ball({0, 0}, 1), 0.0, 5) ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK(lipschitz_ratio(VectorField::identity(2), sym_box(1, 1), 0.0, 5) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(lipschitz_ratio(VectorField::rotation90(), ClosedSet::ball({0, 0}, 1),
                        0.0, 5) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("set image of affine fields maps vertices exactly") {
  const VectorField f =
      VectorField::affine(Matrix{{2, 0}, {0, 3}}, Vector{0, 0});
  const ClosedSet image = set_image(f, 0.0, unit_box());
  const ClosedSet expected =
      ClosedSet::polytope({{0, 0}, {2, 0}, {2, 3}, {0, 3}});
  CHECK(metric_d(image, expected) == doctest::Approx(0.0).epsilon(1e-12));

  const ClosedSet same = set_image(VectorField::identity(2), 0.0, unit_box());
  CHECK(metric_d(same, unit_box()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("set image of a nonlinear field reports its hull deficiency") {
  const VectorField f = VectorField::nonlinear(
      2, [](double, const Vector& x) {
        return Vector{x[0], x[1] + x[0] * x[0]};
      });
  const ClosedSet image = set_image(f, 0.0, unit_box());
  CHECK_FALSE(image.is_empty());
  // The parabola bulges outside the hull of the mapped corners.
  const double deficiency = set_image_deficiency(f, 0.0, unit_box());
  CHECK(deficiency > 1e-3);
  // Affine fields have no deficiency.
  CHECK(set_image_deficiency(VectorField::identity(2), 0.0, unit_box()) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("set image rejects unions and subspaces") {
  const ClosedSet u = ClosedSet::union_of({unit_box(), ClosedSet::point({5, 5})});
  CHECK_THROWS_AS(set_image(VectorField::identity(2), 0.0, u),
                  std::invalid_argument);
  CHECK_THROWS_AS(set_image(VectorField::identity(2), 0.0,
                            ClosedSet::subspace({{1, 0}}, {0, 0})),
                  std::invalid_argument);
}

TEST_CASE("set integral of a constant box returns the box") {
  const ClosedSet box = unit_box();
  const ClosedSet integral =
      set_integral([&](double) { return box; }, 0.0, 1.0, 0.01);
  CHECK(metric_d(integral, box) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("set integral of singletons is the ordinary integral") {
  // c(t) = (2t, 1): integral over [0,1] is (1, 1).
  const ClosedSet integral = set_integral(
      [](double t) {
        return ClosedSet::point({2 * t, 1.0});
      },
      0.0, 1.0, 1e-3);
  CHECK(rho({1, 1}, integral) <= 2e-3);
  CHECK(bounding_radius(integral) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(2e-3));
}

TEST_CASE("set integral of growing balls approximates Ball(0, 1/2)") {
  const ClosedSet integral = set_integral(
      [](double t) {
        return ClosedSet::ball({0, 0}, t);
      },
      0.0, 1.0, 2e-3);
  CHECK(metric_d(integral, ClosedSet::ball({0, 0}, 0.5)) <= 1e-2);
}

TEST_CASE("point ode: exponential growth, stationarity, rotation") {
  SolverConfig cfg;
  cfg.h = 1e-3;
  const VectorField growth = VectorField::affine(Matrix{{1}}, Vector{0});
  const PointTrajectory a = solve_point_ode(growth, {1}, 1.0, cfg);
  CHECK(a.states.back()[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-6));

  const PointTrajectory b =
      solve_point_ode(VectorField::zero(2), {3, -2}, 1.0, cfg);
  CHECK(b.states.back()[0] == doctest::Approx(3.0));
  CHECK(b.states.back()[1] == doctest::Approx(-2.0));

  const double quarter = std::acos(-1.0) / 2.0;
  const PointTrajectory c =
      solve_point_ode(VectorField::rotation90(), {1, 0}, quarter, cfg);
  CHECK(std::fabs(c.states.back()[0] - 0.0) <= 1e-6);
  CHECK(std::fabs(c.states.back()[1] - 1.0) <= 1e-6);
}

TEST_CASE("point ode agrees with a fourth-order reference on a random field") {
  Rng rng(417);
  const Matrix l{{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)},
                 {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}};
  const Vector b{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const VectorField f = VectorField::affine(l, b);
  SolverConfig cfg;
  cfg.h = 1e-3;
  const Vector x0{0.3, -0.7};
  const PointTrajectory traj = solve_point_ode(f, x0, 1.0, cfg);
  const Vector ref = oracle::rk4(
      [&](double t, const Vector& x) { return f(t, x); }, x0, 0.0, 1.0, 1e-3);
  CHECK(dist2(traj.states.back(), ref) <= 1e-6);
}

TEST_CASE("picard step: zero field reproduces A0 at every node") {
  std::vector<double> times;
  std::vector<ClosedSet> sets;
  for (int i = 0; i <= 10; ++i) {
    times.push_back(0.1 * i);
    sets.push_back(unit_box());
  }
  const SetTrajectory constant = SetTrajectory::make(times, sets);
  SolverConfig cfg;
  cfg.h = 0.1;
  const SetTrajectory stepped =
      picard_step_set(VectorField::zero(2), unit_box(), constant, cfg);
  CHECK(sup_change(stepped, constant) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("picard step: one identity step from the constant guess") {
  // A0 + integral_0^1 A0 dt = 2 A0 for the symmetric box.
  std::vector<double> times;
  std::vector<ClosedSet> sets;
  const int n = 100;
  for (int i = 0; i <= n; ++i) {
    times.push_back(static_cast<double>(i) / n);
    sets.push_back(sym_box(1, 1));
  }
  const SetTrajectory constant = SetTrajectory::make(times, sets);
  SolverConfig cfg;
  cfg.h = 1.0 / n;
  const SetTrajectory stepped =
      picard_step_set(VectorField::identity(2), sym_box(1, 1), constant, cfg);
  CHECK(metric_d(stepped.sets.back(), sym_box(2, 2)) <= 1e-9);
}

TEST_CASE("set ode with zero field is exactly stationary") {
  SolverConfig cfg;
  cfg.h = 0.05;
  const auto result = solve_set_ode(VectorField::zero(2), unit_box(), 1.0, cfg);
  CHECK(result.diagnostics.converged);
  for (const ClosedSet& s : result.trajectory.sets) {
    CHECK(metric_d(s, unit_box()) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("set ode: diagonal growth matches the scalar closed form") {
  SolverConfig cfg;
  cfg.h = 2e-3;
  const VectorField f =
      VectorField::affine(Matrix{{1, 0}, {0, 2}}, Vector{0, 0});
  const auto result = solve_set_ode(f, sym_box(1, 1), 1.0, cfg);
  CHECK(result.diagnostics.converged);
  const ClosedSet expected = sym_box(std::exp(1.0), std::exp(2.0));
  CHECK(metric_d(result.trajectory.sets.back(), expected) <= 2e-2);
}

TEST_CASE("set ode: ball initial data grows to Ball(0, e)") {
  SolverConfig cfg;
  cfg.h = 2e-3;
  const auto result =
      solve_set_ode(VectorField::identity(2), ClosedSet::ball({0, 0}, 1), 1.0,
                    cfg);
  CHECK(metric_d(result.trajectory.sets.back(), ClosedSet::ball({0, 0}, std::exp(1.0))) <=
        2e-2);
}

TEST_CASE("set ode flags a nonzero drift against the fixed-point hypothesis") {
  SolverConfig cfg;
  cfg.h = 0.02;
  const VectorField f =
      VectorField::affine(Matrix{{1, 0}, {0, 1}}, Vector{1, 0});
  const auto result = solve_set_ode(f, sym_box(1, 1), 0.2, cfg);
  CHECK_FALSE(result.diagnostics.f_zero_hypothesis_ok);
  const auto ok = solve_set_ode(VectorField::identity(2), sym_box(1, 1), 0.2, cfg);
  CHECK(ok.diagnostics.f_zero_hypothesis_ok);
}

TEST_CASE("set ode reports non-convergence when starved of iterations") {
  SolverConfig cfg;
  cfg.h = 0.05;
  cfg.max_picard_iters = 1;
  CHECK_THROWS_AS(
      solve_set_ode(VectorField::identity(2), sym_box(1, 1), 1.0, cfg),
      std::runtime_error);
}

TEST_CASE("grid refinement reduces the end error by a first-order factor") {
  const VectorField f =
      VectorField::affine(Matrix{{1, 0}, {0, 2}}, Vector{0, 0});
  const ClosedSet expected = sym_box(std::exp(1.0), std::exp(2.0));
  SolverConfig coarse;
  coarse.h = 0.02;
  SolverConfig fine;
  fine.h = 0.01;
  const double err_coarse =
      metric_d(solve_set_ode(f, sym_box(1, 1), 1.0, coarse).trajectory.sets.back(),
               expected);
  const double err_fine =
      metric_d(solve_set_ode(f, sym_box(1, 1), 1.0, fine).trajectory.sets.back(),
               expected);
  CHECK(err_coarse / err_fine >= 1.8);
}

TEST_CASE("inclusion monotonicity for affine fields") {
  const VectorField f =
      VectorField::affine(Matrix{{1, 0.5}, {0, 1}}, Vector{0, 0});
  SolverConfig cfg;
  cfg.h = 0.02;
  const auto small = solve_set_ode(f, sym_box(1, 1), 0.5, cfg);
  const auto large = solve_set_ode(f, sym_box(1.5, 1.5), 0.5, cfg);
  for (std::size_t i = 0; i < small.trajectory.size(); i += 5) {
    const auto* poly = small.trajectory.sets[i].as<Polytope>();
    REQUIRE(poly != nullptr);
    for (const Vector& v : poly->vertices) {
      CHECK(member(v, large.trajectory.sets[i], 1e-9));
    }
  }
}

TEST_CASE("uniqueness surrogate: different initial guesses converge together") {
  const VectorField f =
      VectorField::affine(Matrix{{0.8, 0.1}, {0, 0.9}}, Vector{0, 0});
  SolverConfig cfg;
  cfg.h = 0.01;
  const double t_end = 0.3;
  const auto solved = solve_set_ode(f, sym_box(1, 1), t_end, cfg);

  // Re-run the Picard iteration by hand from the inflated guess 2*A0.
  std::vector<double> times = solved.trajectory.times;
  std::vector<ClosedSet> sets(times.size(), sym_box(2, 2));
  SetTrajectory guess = SetTrajectory::make(times, sets);
  for (int iter = 0; iter < cfg.max_picard_iters; ++iter) {
    SetTrajectory next = picard_step_set(f, sym_box(1, 1), guess, cfg);
    const double change = sup_change(next, guess);
    guess = std::move(next);
    if (change < cfg.picard_tol) break;
  }
  CHECK(sup_change(guess, solved.trajectory) <= 10 * cfg.picard_tol);
}

TEST_CASE("contraction check: identical sets give zero, 2I over 0.1 gives 0.2") {
  SolverConfig cfg;
  cfg.h = 1e-3;
  const VectorField f2 =
      VectorField::affine(Matrix{{2, 0}, {0, 2}}, Vector{0, 0});
  const auto same = contraction_check(f2, sym_box(1, 1), sym_box(1, 1), 0.0,
                                      0.1, cfg);
  CHECK(same.ratio == doctest::Approx(0.0));

  const auto boxes = contraction_check(f2, sym_box(1, 1), sym_box(2, 1.5), 0.0,
                                       0.1, cfg);
  CHECK(boxes.ratio == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(boxes.ratio <= boxes.bound + 1e-6);
}

TEST_CASE("contraction ratios stay within the estimated bound") {
  Rng rng(3111);
  SolverConfig cfg;
  cfg.h = 1e-3;
  for (int i = 0; i < 5; ++i) {
    const Matrix l{{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)},
                   {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)}};
    const VectorField f = VectorField::affine(l, Vector{0, 0});
    const auto report = contraction_check(
        f, sym_box(1, 1), sym_box(1.2, 0.7), 0.0, 0.05, cfg);
    CHECK(report.ratio <= report.bound + 1e-6);
  }
}

TEST_CASE("trajectories validate their grids") {
  CHECK_THROWS_AS(SetTrajectory::make({0.0, 0.0}, {unit_box(), unit_box()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SetTrajectory::make({0.0}, {unit_box(), unit_box()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SetTrajectory::make({0.0, 1.0}, {unit_box(), ClosedSet::empty()}),
                  std::invalid_argument);
}

}  // TEST_SUITE
