#include "kappa/set_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "detail/gen.hpp"
#include "kappa/kappa_norm.hpp"

namespace kappa {

Vector VectorField::operator()(double t, const Vector& x) const {
  if (!eval) throw std::invalid_argument("VectorField: no evaluator set");
  return eval(t, x);
}

VectorField VectorField::affine(Matrix l, Vector b_const) {
  const std::size_t d = l.size();
  check_dim(b_const, d, "VectorField: b");
  return affine(std::move(l),
                [b = std::move(b_const)](double) { return b; });
}

VectorField VectorField::affine(Matrix l, std::function<Vector(double)> b) {
  VectorField f;
  f.dim = l.size();
  if (f.dim == 0) throw std::invalid_argument("VectorField: empty matrix");
  for (const Vector& row : l) {
    if (row.size() != f.dim) {
      throw std::invalid_argument("VectorField: matrix is not square");
    }
  }
  f.is_affine = true;
  f.lin = std::move(l);
  f.drift = std::move(b);
  f.eval = [lin = f.lin, drift = f.drift](double t, const Vector& x) {
    return add(mat_apply(lin, x), drift(t));
  };
  return f;
}

VectorField VectorField::zero(std::size_t d) {
  Matrix l(d, zeros(d));
  return affine(std::move(l), zeros(d));
}

VectorField VectorField::identity(std::size_t d) {
  return affine(identity_matrix(d), zeros(d));
}

VectorField VectorField::rotation90() {
  return affine(Matrix{{0.0, -1.0}, {1.0, 0.0}}, zeros(2));
}

VectorField VectorField::nonlinear(
    std::size_t d, std::function<Vector(double, const Vector&)> eval) {
  if (d == 0) throw std::invalid_argument("VectorField: dimension must be > 0");
  if (!eval) throw std::invalid_argument("VectorField: no evaluator given");
  VectorField f;
  f.dim = d;
  f.is_affine = false;
  f.eval = std::move(eval);
  return f;
}

SetTrajectory SetTrajectory::make(std::vector<double> times,
                                  std::vector<ClosedSet> sets) {
  if (times.empty() || times.size() != sets.size()) {
    throw std::invalid_argument(
        "SetTrajectory: times and sets must be nonempty and equally long");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument(
          "SetTrajectory: times must be strictly increasing");
    }
  }
  for (const ClosedSet& s : sets) {
    if (s.is_empty()) {
      throw std::invalid_argument("SetTrajectory: sets must be nonempty");
    }
  }
  SetTrajectory t;
  t.times = std::move(times);
  t.sets = std::move(sets);
  return t;
}

namespace {

// Detects L = c * I (any-norm exact ball image) or L^T L = c^2 I (L2 exact
// ball image).  Returns |c| in that case.
enum class LinKind { kGeneral, kScalar, kScaledOrthogonal };

LinKind classify_linear(const Matrix& l, double* scale_out) {
  const std::size_t d = l.size();
  const double c0 = l[0][0];
  bool scalar = true;
  for (std::size_t i = 0; i < d && scalar; ++i) {
    for (std::size_t j = 0; j < d && scalar; ++j) {
      const double want = i == j ? c0 : 0.0;
      if (std::abs(l[i][j] - want) > 1e-12) scalar = false;
    }
  }
  if (scalar) {
    *scale_out = std::abs(c0);
    return LinKind::kScalar;
  }
  // Gram matrix test for c * rotation.
  double c2 = 0.0;
  for (std::size_t k = 0; k < d; ++k) c2 += l[k][0] * l[k][0];
  const double ref = 1.0 + c2;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      double g = 0.0;
      for (std::size_t k = 0; k < d; ++k) g += l[k][i] * l[k][j];
      const double want = i == j ? c2 : 0.0;
      if (std::abs(g - want) > 1e-12 * ref) return LinKind::kGeneral;
    }
  }
  *scale_out = std::sqrt(c2);
  return LinKind::kScaledOrthogonal;
}

// Canonical hull form of a mapped vertex cloud.
ClosedSet hull_set(std::vector<Vector> pts, double prune_eps) {
  const std::size_t d = pts.front().size();
  if (d == 1) {
    double lo = pts[0][0];
    double hi = lo;
    for (const Vector& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    if (lo == hi) return ClosedSet::point(Vector{lo});
    return ClosedSet::polytope({Vector{lo}, Vector{hi}});
  }
  if (d == 2) return ClosedSet::polytope(convex_hull_2d(std::move(pts)));
  return ClosedSet::polytope(prune_vertices(std::move(pts), prune_eps));
}

ClosedSet prune_set(ClosedSet s, double eps) {
  if (const auto* p = s.as<Polytope>()) {
    if (p->vertices.size() > 4) {
      return hull_set(p->vertices, eps);
    }
  }
  return s;
}

}  // namespace

ClosedSet set_image(const VectorField& f, double t, const ClosedSet& a) {
  if (a.is_empty() || a.as<UnionSet>() || a.as<Subspace>()) {
    throw std::invalid_argument(
        "set_image: input must be a nonempty Polytope or Ball");
  }
  std::vector<Vector> verts;
  if (const auto* b = a.as<Ball>()) {
    if (f.is_affine) {
      double c = 0.0;
      const LinKind kind = classify_linear(f.lin, &c);
      if (kind == LinKind::kScalar ||
          (kind == LinKind::kScaledOrthogonal && b->norm == NormKind::L2)) {
        return ClosedSet::ball(f(t, b->center), c * b->radius, b->norm);
      }
    }
    verts = inscribe_ball(*b, 64).vertices;
  } else {
    verts = a.as<Polytope>()->vertices;
  }
  std::vector<Vector> mapped;
  mapped.reserve(verts.size());
  for (const Vector& v : verts) mapped.push_back(f(t, v));
  return hull_set(std::move(mapped), 1e-9);
}

double set_image_deficiency(const VectorField& f, double t, const ClosedSet& a,
                            int density, std::uint64_t seed) {
  const ClosedSet img = set_image(f, t, a);
  double worst = 0.0;
  for (const Vector& p : boundary_points(a, density)) {
    worst = std::max(worst, rho(f(t, p), img));
  }
  Rng rng(seed);
  for (int i = 0; i < 16 * density; ++i) {
    worst = std::max(worst, rho(f(t, detail::random_point_in(rng, a)), img));
  }
  return worst;
}

double lipschitz_ratio(const VectorField& f, const ClosedSet& a, double t,
                       std::uint64_t seed, int samples) {
  if (a.is_empty()) {
    throw std::invalid_argument("lipschitz_ratio: A must be nonempty");
  }
  if (samples <= 0) {
    throw std::invalid_argument("lipschitz_ratio: samples must be positive");
  }
  const std::size_t d = a.dimension().value_or(f.dim);
  const ClosedSet img = set_image(f, t, a);
  const double r = bounding_radius(a) + 2.0;
  Rng rng(seed);
  double best = 0.0;
  int used = 0;
  while (used < samples) {
    const Vector x = rng.box(d, -r, r);
    const KappaValue den = rho(x, a);
    if (den <= 1e-6) continue;
    ++used;
    best = std::max(best, rho(f(t, x), img) / den);
  }
  return best;
}

namespace {

std::size_t grid_steps(double t1, double t2, double h) {
  if (!(t2 > t1)) {
    throw std::invalid_argument("set_integral: need t2 > t1");
  }
  if (!(h > 0.0)) throw std::invalid_argument("step h must be positive");
  return static_cast<std::size_t>(
      std::max(1.0, std::ceil((t2 - t1) / h - 1e-9)));
}

// One trapezoid term (dt/2) (F_j (+) F_{j+1}).
ClosedSet trapezoid_term(const ClosedSet& f0, const ClosedSet& f1, double dt,
                         double prune_eps) {
  const ClosedSet s = minkowski_sum_cl(f0, f1);
  return prune_set(affine_transform(0.5 * dt, zeros(s.dimension().value_or(1)),
                                    s),
                   prune_eps);
}

}  // namespace

ClosedSet set_integral(const std::function<ClosedSet(double)>& f, double t1,
                       double t2, double h, double hull_prune_eps) {
  const std::size_t n = grid_steps(t1, t2, h);
  const double dt = (t2 - t1) / static_cast<double>(n);
  ClosedSet prev = f(t1);
  std::optional<ClosedSet> acc;
  for (std::size_t j = 0; j < n; ++j) {
    const double tau = j + 1 == n ? t2 : t1 + dt * static_cast<double>(j + 1);
    ClosedSet next = f(tau);
    if (prev.is_empty() || next.is_empty()) {
      throw std::invalid_argument("set_integral: F(tau) is empty");
    }
    if (prev.as<UnionSet>() || next.as<UnionSet>()) {
      throw std::invalid_argument("set_integral: F(tau) must be convex");
    }
    ClosedSet term = trapezoid_term(prev, next, dt, hull_prune_eps);
    if (!acc) {
      acc = std::move(term);
    } else {
      acc = prune_set(minkowski_sum_cl(*acc, term), hull_prune_eps);
    }
    prev = std::move(next);
  }
  return std::move(*acc);
}

PointTrajectory solve_point_ode(const VectorField& f, const Vector& x0,
                                double t_end, const SolverConfig& cfg) {
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("solve_point_ode: t_end must be positive");
  }
  if (!(cfg.h > 0.0) || !(cfg.picard_tol > 0.0) || cfg.max_picard_iters < 1) {
    throw std::invalid_argument("solve_point_ode: invalid solver config");
  }
  const std::size_t n = grid_steps(0.0, t_end, cfg.h);
  const double dt = t_end / static_cast<double>(n);
  PointTrajectory traj;
  traj.times.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    traj.times[i] = i == n ? t_end : dt * static_cast<double>(i);
  }
  traj.states.assign(n + 1, x0);
  std::vector<Vector> vals(n + 1);
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < cfg.max_picard_iters; ++iter) {
    for (std::size_t i = 0; i <= n; ++i) {
      vals[i] = f(traj.times[i], traj.states[i]);
    }
    residual = 0.0;
    Vector run = x0;
    std::vector<Vector> next(n + 1);
    next[0] = x0;
    for (std::size_t i = 1; i <= n; ++i) {
      run = add(run, scale(0.5 * dt, add(vals[i - 1], vals[i])));
      residual = std::max(residual, norm2(sub(run, traj.states[i])));
      next[i] = run;
    }
    traj.states = std::move(next);
    if (residual < cfg.picard_tol) return traj;
  }
  std::ostringstream msg;
  msg << "solve_point_ode: Picard iteration did not converge; last residual "
      << residual;
  throw std::runtime_error(msg.str());
}

SetTrajectory picard_step_set(const VectorField& f, const ClosedSet& a0,
                              const SetTrajectory& traj,
                              const SolverConfig& cfg) {
  if (a0.is_empty()) {
    throw std::invalid_argument("picard_step_set: A0 must be nonempty");
  }
  const std::size_t n = traj.size();
  std::vector<ClosedSet> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    images.push_back(set_image(f, traj.times[i], traj.sets[i]));
  }
  std::vector<ClosedSet> out;
  out.reserve(n);
  out.push_back(a0);
  std::optional<ClosedSet> acc;
  for (std::size_t i = 1; i < n; ++i) {
    const double dt = traj.times[i] - traj.times[i - 1];
    ClosedSet term =
        trapezoid_term(images[i - 1], images[i], dt, cfg.hull_prune_eps);
    if (!acc) {
      acc = std::move(term);
    } else {
      acc = prune_set(minkowski_sum_cl(*acc, term), cfg.hull_prune_eps);
    }
    out.push_back(prune_set(minkowski_sum_cl(a0, *acc), cfg.hull_prune_eps));
  }
  std::vector<double> times = traj.times;
  return SetTrajectory::make(std::move(times), std::move(out));
}

namespace {

double estimate_c_hat(const VectorField& f, const ClosedSet& a0, double t_end) {
  if (f.is_affine) return mat_spectral_norm(f.lin);
  double best = 0.0;
  for (int k = 0; k <= 4; ++k) {
    const double t = t_end * static_cast<double>(k) / 4.0;
    best = std::max(best, lipschitz_ratio(f, a0, t, 1777 + k, 32));
  }
  return 1.5 * best;  // safety margin over the empirical lower bound
}

}  // namespace

SetOdeResult solve_set_ode(const VectorField& f, const ClosedSet& a0,
                           double t_end, const SolverConfig& cfg) {
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("solve_set_ode: t_end must be positive");
  }
  if (a0.is_empty() || a0.as<UnionSet>() || a0.as<Subspace>()) {
    throw std::invalid_argument(
        "solve_set_ode: A0 must be a convex Polytope or Ball");
  }
  if (!(cfg.h > 0.0) || !(cfg.picard_tol > 0.0) || cfg.max_picard_iters < 1) {
    throw std::invalid_argument("solve_set_ode: invalid solver config");
  }
  const std::size_t n = grid_steps(0.0, t_end, cfg.h);
  const double dt = t_end / static_cast<double>(n);
  std::vector<double> times(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    times[i] = i == n ? t_end : dt * static_cast<double>(i);
  }

  SetOdeDiagnostics diag;
  diag.c_hat = estimate_c_hat(f, a0, t_end);
  // Segment the grid so c_hat * segment_length stays below 1 (target 0.5),
  // then sew the per-segment fixed points together.
  std::size_t segments = 1;
  if (std::isfinite(diag.c_hat) && diag.c_hat * t_end >= 0.9) {
    segments = static_cast<std::size_t>(std::ceil(diag.c_hat * t_end / 0.5));
  }
  segments = std::min(segments, n);
  diag.segments = static_cast<int>(segments);

  // f(t, 0) = 0 hypothesis probe on a coarse subgrid.
  {
    const Vector origin = zeros(a0.dimension().value_or(f.dim));
    for (std::size_t k = 0; k <= 8; ++k) {
      const double t = t_end * static_cast<double>(k) / 8.0;
      if (norm2(f(t, origin)) > 1e-12) {
        diag.f_zero_hypothesis_ok = false;
        break;
      }
    }
  }

  std::vector<double> all_times;
  std::vector<ClosedSet> all_sets;
  all_times.reserve(n + 1);
  all_sets.reserve(n + 1);
  ClosedSet seg_start_set = a0;
  std::size_t seg_begin = 0;
  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t seg_end =
        s + 1 == segments ? n : (n * (s + 1)) / segments;
    std::vector<double> seg_times(times.begin() + seg_begin,
                                  times.begin() + seg_end + 1);
    std::vector<ClosedSet> seg_sets(seg_times.size(), seg_start_set);
    SetTrajectory seg = SetTrajectory::make(seg_times, std::move(seg_sets));
    double residual = std::numeric_limits<double>::infinity();
    int iter = 0;
    bool done = false;
    for (; iter < cfg.max_picard_iters; ++iter) {
      SetTrajectory next = picard_step_set(f, seg_start_set, seg, cfg);
      residual = 0.0;
      for (std::size_t i = 0; i < seg.size(); ++i) {
        residual = std::max(residual, metric_d(next.sets[i], seg.sets[i]));
      }
      seg = std::move(next);
      if (residual < cfg.picard_tol) {
        done = true;
        ++iter;
        break;
      }
    }
    diag.picard_iterations.push_back(iter);
    diag.final_residuals.push_back(residual);
    if (!done) {
      diag.converged = false;
      std::ostringstream msg;
      msg << "solve_set_ode: Picard iteration did not converge on segment "
          << s + 1 << "/" << segments << "; residual history ends at "
          << residual;
      throw std::runtime_error(msg.str());
    }
    const std::size_t skip = s == 0 ? 0 : 1;  // shared boundary node
    for (std::size_t i = skip; i < seg.size(); ++i) {
      all_times.push_back(seg.times[i]);
      all_sets.push_back(seg.sets[i]);
    }
    seg_start_set = all_sets.back();
    seg_begin = seg_end;
  }
  SetOdeResult out{SetTrajectory::make(std::move(all_times),
                                       std::move(all_sets)),
                   std::move(diag)};
  return out;
}

ContractionReport contraction_check(const VectorField& f, const ClosedSet& a1,
                                    const ClosedSet& a2, double t1, double t2,
                                    const SolverConfig& cfg) {
  if (a1.is_empty() || a2.is_empty()) {
    throw std::invalid_argument("contraction_check: sets must be nonempty");
  }
  if (!(t2 > t1)) {
    throw std::invalid_argument("contraction_check: need t2 > t1");
  }
  ContractionReport rep;
  const double span = t2 - t1;
  double c_hat = estimate_c_hat(f, a1, t2);
  rep.bound = c_hat * span;
  const double d0 = metric_d(a1, a2);
  if (d0 == 0.0) {
    rep.ratio = 0.0;
    return rep;
  }
  const ClosedSet i1 = set_integral(
      [&](double tau) { return set_image(f, tau, a1); }, t1, t2, cfg.h,
      cfg.hull_prune_eps);
  const ClosedSet i2 = set_integral(
      [&](double tau) { return set_image(f, tau, a2); }, t1, t2, cfg.h,
      cfg.hull_prune_eps);
  rep.ratio = metric_d(i1, i2) / d0;
  return rep;
}

}  // namespace kappa
