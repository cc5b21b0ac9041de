// Acceptance gate: twelve criteria, one pass/fail line each.  Exits nonzero
// if any criterion fails.  argv[1] must be the CLI binary path (used by the
// determinism criterion).  Tolerances are pinned here, not configurable.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kappa/axiom_suite.hpp"
#include "kappa/closed_set.hpp"
#include "kappa/duality.hpp"
#include "kappa/kappa_norm.hpp"
#include "kappa/operator_norm.hpp"
#include "kappa/order_rep.hpp"
#include "kappa/set_flow.hpp"
#include "support/oracles.hpp"

namespace {

using namespace kappa;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string note;
};

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buffer[512];
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return std::string(buffer);
}

ClosedSet random_polygon(Rng& rng, int max_extra = 4) {
  for (;;) {
    const int points = 3 + rng.uniform_int(0, max_extra);
    std::vector<Vector> pts;
    for (int i = 0; i < points; ++i) pts.push_back(rng.box(2, -2.0, 2.0));
    std::vector<Vector> hull = convex_hull_2d(pts);
    if (hull.size() >= 3) return ClosedSet::polytope(std::move(hull));
  }
}

// ---------------------------------------------------------------------------
// 1. Axiom suite for the Euclidean rho over d in {1,2,3}.

Outcome criterion_axioms() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    SuiteConfig cfg;
    cfg.seed = 42;
    cfg.dimension = d;
    cfg.instances = 200;
    cfg.tolerance = 1e-9;
    const SuiteReport report = axiom_suite(
        [](const Vector& x, const ClosedSet& c) { return rho(x, c); }, cfg);
    if (report.checks.size() != 9) {
      return {false, fmt("d=%zu produced %zu checks, expected 9", d,
                         report.checks.size())};
    }
    for (const AxiomCheck& check : report.checks) {
      worst = std::max(worst, check.worst_violation);
      if (!check.pass || check.worst_violation > 1e-9) {
        return {false, fmt("d=%zu %s violation %.3e", d, check.name.c_str(),
                           check.worst_violation)};
      }
    }
  }
  const double secs = seconds_since(start);
  if (secs >= 30.0) return {false, fmt("runtime %.1f s >= 30 s", secs)};
  return {true, fmt("worst violation %.2e, %.1f s", worst, secs)};
}

// ---------------------------------------------------------------------------
// 2. metric_D against the dense-grid Hausdorff-sum oracle.

Outcome criterion_metric_oracle() {
  const auto start = Clock::now();
  Rng rng(2026);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ClosedSet a = random_polygon(rng);
    const ClosedSet b = random_polygon(rng);
    const double impl = metric_d(a, b);
    const double grid = oracle::metric_d_grid(
        a.as<Polytope>()->vertices, b.as<Polytope>()->vertices, 1e-3);
    worst = std::max(worst, std::fabs(impl - grid));
    if (std::fabs(impl - grid) > 2e-3) {
      return {false, fmt("pair %d: impl %.6f vs grid %.6f", i, impl, grid)};
    }
  }
  const double secs = seconds_since(start);
  if (secs >= 60.0) return {false, fmt("runtime %.1f s >= 60 s", secs)};
  return {true, fmt("worst |impl-grid| %.2e, %.1f s", worst, secs)};
}

// ---------------------------------------------------------------------------
// 3. kappa_form against the grid oracle; the duality axiom suite.

Outcome criterion_form_oracle() {
  Rng rng(906);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ClosedSet a = random_polygon(rng);
    const ClosedSet b = random_polygon(rng);
    const Vector x = rng.box(2, -3.0, 3.0);
    const Vector y = rng.box(2, -3.0, 3.0);
    const double impl = kappa_form(x, a, y, b);
    const double grid = oracle::form_grid(x, a, y, b, 1e-3);
    worst = std::max(worst, std::fabs(impl - grid));
    if (std::fabs(impl - grid) > 1e-6) {
      return {false,
              fmt("quadruple %d: impl %.9f vs grid %.9f", i, impl, grid)};
    }
  }
  SuiteConfig cfg;
  cfg.seed = 7;
  cfg.dimension = 2;
  cfg.instances = 200;
  cfg.tolerance = 1e-9;
  const SuiteReport report = duality_axiom_suite(cfg);
  for (const AxiomCheck& check : report.checks) {
    if (!check.pass) {
      return {false, fmt("duality suite %s violation %.3e",
                         check.name.c_str(), check.worst_violation)};
    }
  }
  return {true, fmt("worst |impl-grid| %.2e, %zu duality checks pass", worst,
                    report.checks.size())};
}

// ---------------------------------------------------------------------------
// 4. Cauchy-Schwarz-type bounds and the bipolar identity.

Outcome criterion_duality_bounds() {
  Rng rng(55);
  const TestFamily family = TestFamily::default_family(18, 2);
  double worst_slack = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ClosedSet a = (i % 3 == 0)
                            ? ClosedSet::ball(rng.box(2, -2.0, 2.0),
                                              0.25 + rng.uniform(0.0, 1.5))
                            : random_polygon(rng);
    const ClosedSet b = (i % 4 == 0)
                            ? ClosedSet::ball(rng.box(2, -2.0, 2.0),
                                              0.25 + rng.uniform(0.0, 1.5))
                            : random_polygon(rng);
    const Vector x = rng.box(2, -3.0, 3.0);
    const Vector y = rng.box(2, -3.0, 3.0);
    const double form = kappa_form(x, a, y, b);
    const double bound = rho(x, a) * rho(y, b);
    worst_slack = std::max(worst_slack, form - bound);
    if (form > bound + 1e-12) {
      return {false, fmt("instance %d: form %.12f > rho*rho %.12f", i, form,
                         bound)};
    }
    const double tilde = rho_tilde_sampled(x, a, family);
    if (tilde > rho(x, a) + 1e-12) {
      return {false, fmt("instance %d: rho_tilde %.12f > rho %.12f", i, tilde,
                         rho(x, a))};
    }
  }
  double worst_bipolar = 0.0;
  for (int i = 0; i < 20; ++i) {
    std::vector<Vector> vertices;
    const int pairs = 2 + rng.uniform_int(0, 2);
    for (int k = 0; k < pairs; ++k) {
      const Vector v = rng.box(2, 0.3, 2.0);
      vertices.push_back(v);
      vertices.push_back({-v[0], -v[1]});
    }
    const ClosedSet a = ClosedSet::polytope(convex_hull_2d(vertices));
    const double err = metric_d(polar(polar(a)), a);
    worst_bipolar = std::max(worst_bipolar, err);
    if (err > 1e-9) {
      return {false, fmt("bipolar %d: metric_D %.3e", i, err)};
    }
  }
  return {true, fmt("worst form slack %.2e, worst bipolar %.2e", worst_slack,
                    worst_bipolar)};
}

// ---------------------------------------------------------------------------
// 5. Conditional operator norm suite.

Outcome criterion_operator_suite() {
  SuiteConfig cfg;
  cfg.seed = 11;
  cfg.dimension = 2;
  cfg.instances = 100;
  cfg.tolerance = 1e-8;
  const SuiteReport report = operator_axiom_suite(cfg);
  const std::vector<std::string> expected = {
      "(N1) forward", "(N2)", "(N3) Lipschitz in A", "(N5a)",
      "(N5b)",        "(N6)", "(N7)"};
  if (report.checks.size() != expected.size()) {
    return {false, fmt("%zu checks, expected %zu", report.checks.size(),
                       expected.size())};
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const AxiomCheck& check = report.checks[i];
    if (check.name != expected[i]) {
      return {false, fmt("check %zu named '%s'", i, check.name.c_str())};
    }
    worst = std::max(worst, check.worst_violation);
    if (!check.pass || check.worst_violation > 1e-8) {
      return {false, fmt("%s violation %.3e", check.name.c_str(),
                         check.worst_violation)};
    }
  }
  return {true, fmt("worst violation %.2e over %zu checks", worst,
                    report.checks.size())};
}

// ---------------------------------------------------------------------------
// 6. Point ODE against the rotation landmark and closed forms.

Outcome criterion_point_ode() {
  SolverConfig cfg;
  cfg.h = 1e-3;
  const VectorField rot =
      VectorField::affine(Matrix{{0.0, -1.0}, {1.0, 0.0}}, Vector{0.0, 0.0});
  const PointTrajectory quarter =
      solve_point_ode(rot, {1.0, 0.0}, std::acos(-1.0) / 2.0, cfg);
  const Vector& end = quarter.states.back();
  const double rot_err = std::hypot(end[0] - 0.0, end[1] - 1.0);
  if (rot_err > 1e-6) {
    return {false, fmt("rotation endpoint error %.3e", rot_err)};
  }

  Rng rng(606);
  double worst = rot_err;
  for (int i = 0; i < 10; ++i) {
    double theta = 0.0, phi = 0.0, det = 0.0;
    do {
      theta = rng.uniform(0.0, 2.0 * std::acos(-1.0));
      phi = rng.uniform(0.0, 2.0 * std::acos(-1.0));
      det = std::sin(phi - theta);
    } while (std::fabs(det) < 0.5);
    const double l1 = rng.uniform(-1.0, 1.0);
    const double l2 = rng.uniform(-1.0, 1.0);
    // L = V diag(l1,l2) V^{-1} with V = [v1 v2], closed-form 2x2 inverse.
    const double v[2][2] = {{std::cos(theta), std::cos(phi)},
                            {std::sin(theta), std::sin(phi)}};
    const double w[2][2] = {{v[1][1] / det, -v[0][1] / det},
                            {-v[1][0] / det, v[0][0] / det}};
    Matrix L = {{0.0, 0.0}, {0.0, 0.0}};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        L[r][c] = v[r][0] * l1 * w[0][c] + v[r][1] * l2 * w[1][c];
      }
    }
    const Vector x0 = rng.box(2, -1.0, 1.0);
    const double t_end = 0.5;
    const PointTrajectory traj = solve_point_ode(
        VectorField::affine(L, Vector{0.0, 0.0}), x0, t_end, cfg);
    // x(t) = V diag(e^{l t}) V^{-1} x0.
    const double y0 = w[0][0] * x0[0] + w[0][1] * x0[1];
    const double y1 = w[1][0] * x0[0] + w[1][1] * x0[1];
    const double e0 = std::exp(l1 * t_end) * y0;
    const double e1 = std::exp(l2 * t_end) * y1;
    const Vector exact = {v[0][0] * e0 + v[0][1] * e1,
                          v[1][0] * e0 + v[1][1] * e1};
    const Vector& got = traj.states.back();
    const double err = std::hypot(got[0] - exact[0], got[1] - exact[1]);
    worst = std::max(worst, err);
    if (err > 1e-6) {
      return {false, fmt("random L #%d error %.3e", i, err)};
    }
  }
  return {true, fmt("worst endpoint error %.2e", worst)};
}

// ---------------------------------------------------------------------------
// 7. Set ODE: accuracy, h-refinement, per-segment contraction.

Outcome criterion_set_ode() {
  const auto start = Clock::now();
  const VectorField f =
      VectorField::affine(Matrix{{1.0, 0.0}, {0.0, 2.0}}, Vector{0.0, 0.0});
  const ClosedSet a0 = ClosedSet::polytope(
      {{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}});
  const double e1 = std::exp(1.0);
  const double e2 = std::exp(2.0);
  const ClosedSet target =
      ClosedSet::polytope({{-e1, -e2}, {e1, -e2}, {e1, e2}, {-e1, e2}});

  SolverConfig cfg;
  cfg.h = 1e-3;
  const SetOdeResult coarse = solve_set_ode(f, a0, 1.0, cfg);
  if (!coarse.diagnostics.converged) return {false, "solver did not converge"};
  const double err_h = metric_d(coarse.trajectory.sets.back(), target);
  if (err_h > 1e-2) {
    return {false, fmt("final error %.3e > 1e-2 at h=1e-3", err_h)};
  }

  // The library metric treats sub-tolerance offsets as zero, so the
  // h-refinement comparison is done with the brute-force grid metric, which
  // resolves the actual discretization error.
  const auto grid_err = [&target](const SetOdeResult& r) {
    return oracle::metric_d_grid(r.trajectory.sets.back().as<Polytope>()->vertices,
                                 target.as<Polytope>()->vertices, 1e-3);
  };
  SolverConfig half = cfg;
  half.h = 5e-4;
  const SetOdeResult fine = solve_set_ode(f, a0, 1.0, half);
  const double gerr_h = grid_err(coarse);
  const double gerr_half = grid_err(fine);
  const double factor = gerr_half > 1e-12 ? gerr_h / gerr_half : 1e9;
  if (factor < 1.8) {
    return {false, fmt("h-refinement factor %.2f < 1.8 (%.3e -> %.3e)",
                       factor, gerr_h, gerr_half)};
  }

  // Per-segment contraction: the solver splits node indices evenly, so the
  // boundaries are reconstructed the same way here.
  const int segments = coarse.diagnostics.segments;
  const std::size_t n = coarse.trajectory.size() - 1;
  const ClosedSet probe = ClosedSet::polytope(
      {{-0.5, -1.5}, {1.5, -0.5}, {1.5, 1.5}, {-0.5, 1.5}});
  double worst_gap = -1.0;
  std::size_t begin = 0;
  for (int s = 0; s < segments; ++s) {
    const std::size_t end_idx =
        (s + 1 == segments) ? n
                            : (n * static_cast<std::size_t>(s + 1)) /
                                  static_cast<std::size_t>(segments);
    const double t1 = coarse.trajectory.times[begin];
    const double t2 = coarse.trajectory.times[end_idx];
    const ContractionReport rep = contraction_check(f, a0, probe, t1, t2, cfg);
    worst_gap = std::max(worst_gap, rep.ratio - rep.bound);
    if (rep.ratio > rep.bound + 1e-6) {
      return {false, fmt("segment %d: ratio %.6f > bound %.6f", s, rep.ratio,
                         rep.bound)};
    }
    begin = end_idx;
  }
  const double secs = seconds_since(start);
  if (secs >= 120.0) return {false, fmt("runtime %.1f s >= 120 s", secs)};
  return {true,
          fmt("err %.1e (grid %.1e), refinement x%.1f, %d segments, %.1f s",
              err_h, gerr_h, factor, segments, secs)};
}

// ---------------------------------------------------------------------------
// 8. Perturbation bound with grid cross-check.

Outcome criterion_perturbation() {
  Rng rng(808);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ClosedSet cv = random_polygon(rng);
    for (double eps : {0.2, 0.02}) {
      const PerturbResult pr = perturb_bound(cv, eps);
      if (!(pr.d < eps)) {
        return {false, fmt("instance %d eps %.2f: D %.6f not < eps", i, eps,
                           pr.d)};
      }
      const ClosedSet sum = minkowski_sum_cl(cv, pr.c_sigma);
      const double grid = oracle::metric_d_grid(
          sum.as<Polytope>()->vertices, cv.as<Polytope>()->vertices, 1e-3);
      const double off_half = std::fabs(pr.d - eps / 2.0);
      const double off_grid = std::fabs(pr.d - grid);
      worst = std::max({worst, off_half, off_grid});
      if (off_half > 1e-3 || off_grid > 1e-3) {
        return {false,
                fmt("instance %d eps %.2f: D %.6f, eps/2 %.6f, grid %.6f", i,
                    eps, pr.d, eps / 2.0, grid)};
      }
    }
  }
  return {true, fmt("worst deviation %.2e over 40 runs", worst)};
}

// ---------------------------------------------------------------------------
// 9. Exhaustive interval-order enumeration for n <= 6.

Outcome criterion_interval_orders() {
  const auto start = Clock::now();
  const std::size_t expected_posets[] = {1, 1, 3, 19, 219, 4231, 130023};
  std::size_t interval_orders = 0;
  for (int n = 0; n <= 6; ++n) {
    const auto codes = oracle::representable_codes(n);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::string(1, 'a' + i));
    std::string failure;
    const std::size_t total = oracle::for_each_poset(
        n, [&](const std::vector<std::vector<bool>>& less) {
          if (!failure.empty()) return;
          std::vector<std::pair<std::string, std::string>> pairs;
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              if (less[i][j]) pairs.push_back({ids[i], ids[j]});
            }
          }
          const IntervalOrder p = IntervalOrder::make(ids, pairs);
          const bool claimed = check_interval_order(p);
          const bool representable =
              codes.count(oracle::relation_code(n, less)) > 0;
          if (claimed != representable) {
            failure = fmt("n=%d disagreement (claimed %d, brute force %d)", n,
                          claimed, representable);
            return;
          }
          if (claimed) {
            ++interval_orders;
            const Representation r = find_representation(p);
            if (!verify_representation(p, r)) {
              failure = fmt("n=%d representation failed verification", n);
            }
          }
        });
    if (!failure.empty()) return {false, failure};
    if (total != expected_posets[n]) {
      return {false, fmt("n=%d enumerated %zu posets, expected %zu", n, total,
                         expected_posets[n])};
    }
  }
  const double secs = seconds_since(start);
  if (secs >= 120.0) return {false, fmt("runtime %.1f s >= 120 s", secs)};
  return {true, fmt("134494 posets checked, %zu interval orders, %.1f s",
                    interval_orders, secs)};
}

// ---------------------------------------------------------------------------
// 10. Monotone projection vs the exhaustive minimax oracle.

Outcome criterion_monotone_projection() {
  std::size_t instances = 0;
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i));
    const ChainFamily chains = ChainFamily::of({ids});
    std::vector<std::pair<int, int>> closure;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) closure.push_back({i, j});
    }
    std::vector<double> values(n, -3.0);
    for (;;) {
      ++instances;
      std::map<std::string, double> vmap;
      for (int i = 0; i < n; ++i) vmap[ids[i]] = values[i];
      const ProjectionResult result =
          monotone_project_sup(FunctionOnT::of(vmap), chains);
      const double expect = oracle::minimax_iso_eps(values, closure);
      worst = std::max(worst, std::fabs(result.distance - expect));
      if (std::fabs(result.distance - expect) > 1e-9) {
        return {false, fmt("n=%d distance %.12f vs oracle %.12f", n,
                           result.distance, expect)};
      }
      bool monotone = true;
      for (int i = 1; i < n; ++i) monotone &= values[i - 1] <= values[i];
      if (monotone) {
        for (int i = 0; i < n; ++i) {
          if (result.projection.values.at(ids[i]) != values[i]) {
            return {false, fmt("n=%d monotone input not fixed exactly", n)};
          }
        }
      }
      const ProjectionResult again =
          monotone_project_sup(result.projection, chains);
      if (again.distance > 1e-12) {
        return {false, fmt("n=%d projection not idempotent (%.3e)", n,
                           again.distance)};
      }
      // Next tuple over {-3..3}^n.
      int k = n - 1;
      while (k >= 0 && values[k] == 3.0) {
        values[k] = -3.0;
        --k;
      }
      if (k < 0) break;
      values[k] += 1.0;
    }
  }
  return {true,
          fmt("%zu instances, worst |impl-oracle| %.2e", instances, worst)};
}

// ---------------------------------------------------------------------------
// 11. Constrained fit vs the pairwise brute-force optimum.

Outcome criterion_constrained_fit() {
  Rng rng(1100);
  const std::vector<std::string> ids = {"p", "q", "r", "s"};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> positions;
    double x = 0.0;
    for (int k = 0; k < 4; ++k) {
      x += rng.uniform(0.2, 1.5);
      positions.push_back(x);
    }
    std::vector<double> values;
    for (int k = 0; k < 4; ++k) values.push_back(rng.uniform(-2.0, 2.0));
    const double c2 = rng.uniform(0.0, 2.0);
    const double c1 = c2 + rng.uniform(0.0, 2.0 - c2);

    std::map<std::string, double> vmap, pmap;
    for (int k = 0; k < 4; ++k) {
      vmap[ids[k]] = values[k];
      pmap[ids[k]] = positions[k];
    }
    const FitResult result =
        constrained_fit(FunctionOnT::of(vmap), pmap, c1, c2);
    const double expect = oracle::fit_eps_pairwise(positions, values, c1, c2);
    worst = std::max(worst, std::fabs(result.epsilon - expect));
    if (std::fabs(result.epsilon - expect) > 1e-6) {
      return {false, fmt("trial %d: eps %.9f vs brute force %.9f", trial,
                         result.epsilon, expect)};
    }
    for (int i = 0; i < 4; ++i) {
      if (std::fabs(result.fit.values.at(ids[i]) - values[i]) >
          result.epsilon + 1e-9) {
        return {false, fmt("trial %d: fit strays beyond epsilon", trial)};
      }
      for (int j = i + 1; j < 4; ++j) {
        const double dx = positions[j] - positions[i];
        const double dg =
            result.fit.values.at(ids[j]) - result.fit.values.at(ids[i]);
        if (dg < c2 * dx - 1e-9 || dg > c1 * dx + 1e-9) {
          return {false, fmt("trial %d: slope constraint margin < -1e-9",
                             trial)};
        }
      }
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    const double c1 = rng.uniform(0.0, 1.0);
    const double c2 = c1 + 0.1 + rng.uniform(0.0, 1.0);
    bool threw = false;
    try {
      constrained_fit(FunctionOnT::of({{"p", 0.0}, {"q", 1.0}}),
                      {{"p", 0.0}, {"q", 1.0}}, c1, c2);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    if (!threw) {
      return {false, fmt("C2 %.3f > C1 %.3f accepted", c2, c1)};
    }
  }
  return {true, fmt("worst |eps-oracle| %.2e over 100 trials", worst)};
}

// ---------------------------------------------------------------------------
// 12. CLI determinism: every documented command, twice, byte-identical.

struct CliHarness {
  std::string cli;
  std::filesystem::path dir;

  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
  }

  std::string slurp(const std::filesystem::path& p) const {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Runs `kappa <args> --out <dir>/<out_name>` and returns the output bytes
  // (report plus, when present, the sibling CSV).
  bool run(const std::string& args, const std::string& out_name,
           std::string* bytes) const {
    const std::filesystem::path out = dir / out_name;
    const std::string cmd = cli + " " + args + " --out " + out.string() +
                            " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return false;
    *bytes = slurp(out);
    std::filesystem::path csv = out;
    csv.replace_extension(".csv");
    if (std::filesystem::exists(csv)) *bytes += "\n---csv---\n" + slurp(csv);
    return !bytes->empty();
  }
};

Outcome criterion_cli_determinism(const std::string& cli_path) {
  if (cli_path.empty()) {
    return {false, "CLI binary path not supplied as argv[1]"};
  }
  std::error_code ec;
  char tmpl[] = "/tmp/kappa_accept_XXXXXX";
  if (mkdtemp(tmpl) == nullptr) return {false, "mkdtemp failed"};
  CliHarness h{cli_path, std::filesystem::path(tmpl)};

  h.write("box.json",
          R"({"type":"polytope","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
  h.write("ball.json", R"({"type":"ball","center":[3,0],"radius":1})");
  h.write("quad.json",
          R"({"x":[0,0],"A":{"type":"polytope","vertices":[[1,1],[2,1],[2,2],[1,2]]},)"
          R"("y":[0,0],"B":{"type":"ball","center":[3,0],"radius":1}})");
  h.write("op_a.json", R"({"matrix":[[1,0],[0,1]]})");
  h.write("op_s.json",
          R"({"type":"finite","ops":[{"matrix":[[2,0],[0,1]]},)"
          R"({"matrix":[[1,1],[0,2]]}]})");
  h.write("scenario.json",
          R"({"field":{"builtin":"identity"},)"
          R"("A0":{"type":"ball","center":[0,0],"radius":1},)"
          R"("t_end":0.5,"h":0.01,"picard_tol":1e-8})");
  h.write("poset.json",
          R"({"elements":["a","b","c"],)"
          R"("less":[["a","b"],["b","c"],["a","c"]]})");
  h.write("proj.json",
          R"({"function":{"values":{"x1":3,"x2":1,"x3":2}},)"
          R"("chains":{"chains":[["x1","x2","x3"]]}})");
  h.write("fitin.json",
          R"({"function":{"values":{"a":0,"b":2}},)"
          R"("positions":{"a":0,"b":1},"c1":1,"c2":0})");

  const auto file = [&](const char* name) {
    return (h.dir / name).string();
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"axioms", "axioms --seed 42 --instances 200 --dim 2"},
      {"distance",
       "distance --a " + file("box.json") + " --b " + file("ball.json") +
           " --metric D"},
      {"duality", "duality --input " + file("quad.json") + " --seed 9"},
      {"opnorm", "opnorm --a " + file("op_a.json") + " --b " +
                     file("op_s.json") + " --seed 4"},
      {"ode", "ode --input " + file("scenario.json")},
      {"order check", "order check --input " + file("poset.json")},
      {"order represent", "order represent --input " + file("poset.json")},
      {"order project", "order project --input " + file("proj.json")},
      {"order fit", "order fit --input " + file("fitin.json")},
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string out_name = "out" + std::to_string(i) + ".json";
    std::string first, second;
    if (!h.run(commands[i].second, out_name, &first)) {
      std::filesystem::remove_all(h.dir, ec);
      return {false, fmt("command '%s' failed", commands[i].first.c_str())};
    }
    if (!h.run(commands[i].second, out_name, &second)) {
      std::filesystem::remove_all(h.dir, ec);
      return {false,
              fmt("command '%s' failed on rerun", commands[i].first.c_str())};
    }
    if (first != second) {
      std::filesystem::remove_all(h.dir, ec);
      return {false,
              fmt("command '%s' not byte-stable", commands[i].first.c_str())};
    }
  }
  std::filesystem::remove_all(h.dir, ec);
  return {true, fmt("%zu commands byte-stable across reruns",
                    commands.size())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> gate = {
      {"axiom suite (N1)-(N8)", criterion_axioms},
      {"metric_D grid oracle", criterion_metric_oracle},
      {"kappa-form grid oracle + (D) suite", criterion_form_oracle},
      {"duality bounds + bipolar", criterion_duality_bounds},
      {"operator kappa-norm suite", criterion_operator_suite},
      {"point ODE closed forms", criterion_point_ode},
      {"set ODE accuracy + contraction", criterion_set_ode},
      {"perturbation bound", criterion_perturbation},
      {"interval orders exhaustive n<=6", criterion_interval_orders},
      {"monotone projection exhaustive", criterion_monotone_projection},
      {"constrained fit brute force", criterion_constrained_fit},
      {"CLI determinism",
       [&cli_path] { return criterion_cli_determinism(cli_path); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < gate.size(); ++i) {
    Outcome outcome;
    try {
      outcome = gate[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %02zu %-36s %s  (%s)\n", i + 1,
                gate[i].first.c_str(), outcome.pass ? "PASS" : "FAIL",
                outcome.note.c_str());
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", gate.size() - failures,
              gate.size());
  return failures == 0 ? 0 : 1;
}
