#include "kappa/axiom_suite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/gen.hpp"
#include "kappa/kappa_norm.hpp"

namespace kappa {

namespace {

using detail::describe;
using detail::fmt_num;
using detail::fmt_vec;

struct Recorder {
  AxiomCheck check;
  double tol;

  Recorder(std::string name, double tolerance) : tol(tolerance) {
    check.name = std::move(name);
  }

  template <class WitnessFn>
  void observe(double violation, WitnessFn&& witness) {
    ++check.evaluated;
    if (violation > check.worst_violation) {
      check.worst_violation = violation;
      if (violation > tol) check.witness = witness();
    }
  }

  void skip() { ++check.skipped; }

  AxiomCheck done() {
    check.pass = check.worst_violation <= tol;
    return std::move(check);
  }
};

Vector random_probe(Rng& rng, std::size_t d) { return rng.box(d, -3.0, 3.0); }

AxiomCheck check_n1(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N1)", cfg.tolerance);
  for (int i = 0; i < cfg.instances; ++i) {
    ClosedSet C = detail::random_closed_set(rng, cfg.dimension);
    bool force_inside = rng.uniform() < 0.5;
    Vector x = force_inside ? detail::random_point_in(rng, C)
                            : random_probe(rng, cfg.dimension);
    double v = ev(x, C);
    bool in = member(x, C, 1e-9);
    double violation = 0.0;
    if (in) {
      violation = std::max(0.0, v);
    } else if (v <= cfg.tolerance) {
      violation = rho(x, C);  // geometric distance the evaluator ignored
    }
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " C=" + describe(C) + " value=" + fmt_num(v) +
             (in ? " (member)" : " (not a member)");
    });
  }
  return rec.done();
}

AxiomCheck check_n2(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N2)", cfg.tolerance);
  for (int i = 0; i < cfg.instances; ++i) {
    ClosedSet C = detail::random_closed_set(rng, cfg.dimension);
    ClosedSet Csup = detail::random_superset(rng, C);
    Vector x = random_probe(rng, cfg.dimension);
    double small = ev(x, Csup), big = ev(x, C);
    double violation = small - big;
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " C=" + describe(C) + " C'=" + describe(Csup) +
             " rho(C')=" + fmt_num(small) + " rho(C)=" + fmt_num(big);
    });
  }
  return rec.done();
}

AxiomCheck check_n3(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N3)", cfg.tolerance);
  for (int i = 0; i < cfg.instances; ++i) {
    ClosedSet C = detail::random_closed_set(rng, cfg.dimension);
    Vector x = random_probe(rng, cfg.dimension);
    Vector u = rng.unit_vector(cfg.dimension);
    double step = rng.uniform(1e-3, 2.0);
    Vector x2 = add(x, scale(step, u));
    double violation = std::fabs(ev(x, C) - ev(x2, C)) - dist2(x, x2);
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " x'=" + fmt_vec(x2) + " C=" + describe(C);
    });
  }
  return rec.done();
}

AxiomCheck check_n4(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N4)", cfg.tolerance);
  const int chain_len = 50;
  for (int i = 0; i < cfg.instances; ++i) {
    int k = rng.uniform_int(int(cfg.dimension) + 2, int(cfg.dimension) + 6);
    std::vector<Vector> verts;
    for (int j = 0; j < k; ++j) verts.push_back(rng.box(cfg.dimension, -2.0, 2.0));
    Vector x = random_probe(rng, cfg.dimension);

    ClosedSet C = ClosedSet::polytope(verts);
    double limit = ev(x, C);
    double prev = kInf;
    double chain_min = kInf;
    double mono_violation = 0.0;
    for (int j = 1; j <= chain_len; ++j) {
      std::size_t take = std::min<std::size_t>(verts.size(), std::size_t(j));
      ClosedSet Cj = ClosedSet::polytope(
          std::vector<Vector>(verts.begin(), verts.begin() + long(take)));
      double vj = ev(x, Cj);
      if (prev < kInf) mono_violation = std::max(mono_violation, vj - prev);
      prev = vj;
      chain_min = std::min(chain_min, vj);
    }
    double gap = std::fabs(chain_min - limit);
    double violation = std::max(gap, mono_violation);
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " C=" + describe(C) + " gap=" + fmt_num(gap) +
             " monotonicity breach=" + fmt_num(mono_violation);
    });
  }
  return rec.done();
}

AxiomCheck check_n5a(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N5a)", cfg.tolerance);
  for (int i = 0; i < cfg.instances; ++i) {
    // Operand pairs restricted to combinations whose Minkowski sum is exact.
    ClosedSet C1 = ClosedSet::empty(), C2 = ClosedSet::empty();
    switch (rng.uniform_int(0, 4)) {
      case 0:
        C1 = detail::random_polytope(rng, cfg.dimension);
        C2 = detail::random_polytope(rng, cfg.dimension);
        break;
      case 1:
        C1 = detail::random_ball(rng, cfg.dimension);
        C2 = detail::random_ball(rng, cfg.dimension);
        break;
      case 2:
        C1 = detail::random_polytope(rng, cfg.dimension);
        C2 = ClosedSet::point(rng.box(cfg.dimension, -2.0, 2.0));
        break;
      case 3:
        C1 = detail::random_ball(rng, cfg.dimension);
        C2 = ClosedSet::point(rng.box(cfg.dimension, -2.0, 2.0));
        break;
      default:
        C1 = detail::random_subspace(rng, cfg.dimension);
        C2 = detail::random_subspace(rng, cfg.dimension);
        break;
    }
    ClosedSet sum = minkowski_sum_cl(C1, C2);
    Vector x = random_probe(rng, cfg.dimension);
    Vector y = random_probe(rng, cfg.dimension);
    double lhs = ev(add(x, y), sum);
    double rhs = ev(x, C1) + ev(y, C2);
    double violation = lhs - rhs;
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " y=" + fmt_vec(y) + " C1=" + describe(C1) +
             " C2=" + describe(C2) + " lhs=" + fmt_num(lhs) +
             " rhs=" + fmt_num(rhs);
    });
  }
  return rec.done();
}

AxiomCheck check_n5b(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N5b)", cfg.tolerance);
  for (int i = 0; i < cfg.instances; ++i) {
    ClosedSet C1 = detail::random_convex_set(rng, cfg.dimension);
    // Middle set: a polytope, so the exact sup of a convex evaluator over it
    // sits on a vertex; interior samples guard against non-convex evaluators.
    ClosedSet C2 = detail::random_polytope(rng, cfg.dimension);
    Vector x = random_probe(rng, cfg.dimension);

    double bar = 0.0;
    const auto& verts = C2.as<Polytope>()->vertices;
    for (const auto& z : verts) bar = std::max(bar, ev(z, C1));
    for (int s = 0; s < 32; ++s)
      bar = std::max(bar, ev(detail::random_point_in(rng, C2), C1));

    double lhs = ev(x, C1);
    double rhs = ev(x, C2) + bar;
    double violation = lhs - rhs;
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " C1=" + describe(C1) + " C2=" + describe(C2) +
             " lhs=" + fmt_num(lhs) + " rhs=" + fmt_num(rhs);
    });
  }
  return rec.done();
}

AxiomCheck check_n6(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N6)", cfg.tolerance);
  for (int i = 0; i < cfg.instances; ++i) {
    ClosedSet C = detail::random_closed_set(rng, cfg.dimension);
    Vector x = random_probe(rng, cfg.dimension);
    double lambda = rng.uniform(0.3, 3.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    ClosedSet lC = affine_transform(lambda, zeros(cfg.dimension), C);
    double violation =
        std::fabs(ev(scale(lambda, x), lC) - std::fabs(lambda) * ev(x, C));
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " lambda=" + fmt_num(lambda) +
             " C=" + describe(C);
    });
  }
  return rec.done();
}

AxiomCheck check_n7(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N7)", cfg.tolerance);
  for (int i = 0; i < cfg.instances; ++i) {
    ClosedSet C = detail::random_closed_set(rng, cfg.dimension);
    Vector x = random_probe(rng, cfg.dimension);
    Vector y = random_probe(rng, cfg.dimension);
    ClosedSet Cy = affine_transform(1.0, y, C);
    double violation = std::fabs(ev(add(x, y), Cy) - ev(x, C));
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " y=" + fmt_vec(y) + " C=" + describe(C);
    });
  }
  return rec.done();
}

AxiomCheck check_n8(const KappaEvaluator& ev, const SuiteConfig& cfg, Rng rng) {
  Recorder rec("(N8)", cfg.tolerance);
  for (int i = 0; i < cfg.instances; ++i) {
    Vector x = random_probe(rng, cfg.dimension);
    double v = ev(x, ClosedSet::empty());
    double violation = (std::isinf(v) && v > 0) ? 0.0 : 1.0;
    // Bounded nonempty sets must stay finite.
    ClosedSet C = rng.uniform() < 0.5
                      ? detail::random_ball(rng, cfg.dimension)
                      : detail::random_polytope(rng, cfg.dimension);
    double w = ev(x, C);
    if (!std::isfinite(w)) violation = std::max(violation, 1.0);
    rec.observe(violation, [&] {
      return "x=" + fmt_vec(x) + " rho(x,empty)=" + fmt_num(v) +
             " rho(x," + describe(C) + ")=" + fmt_num(w);
    });
  }
  return rec.done();
}

}  // namespace

bool SuiteReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const AxiomCheck* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

SuiteReport axiom_suite(const KappaEvaluator& evaluator,
                        const SuiteConfig& config) {
  if (!evaluator) throw std::invalid_argument("axiom_suite: null evaluator");
  if (config.dimension == 0)
    throw std::invalid_argument("axiom_suite: dimension must be positive");
  if (config.instances <= 0)
    throw std::invalid_argument("axiom_suite: instances must be positive");
  Rng root(config.seed);
  SuiteReport report;
  report.checks.push_back(check_n1(evaluator, config, root.split(1)));
  report.checks.push_back(check_n2(evaluator, config, root.split(2)));
  report.checks.push_back(check_n3(evaluator, config, root.split(3)));
  report.checks.push_back(check_n4(evaluator, config, root.split(4)));
  report.checks.push_back(check_n5a(evaluator, config, root.split(5)));
  report.checks.push_back(check_n5b(evaluator, config, root.split(6)));
  report.checks.push_back(check_n6(evaluator, config, root.split(7)));
  report.checks.push_back(check_n7(evaluator, config, root.split(8)));
  report.checks.push_back(check_n8(evaluator, config, root.split(9)));
  return report;
}

}  // namespace kappa
