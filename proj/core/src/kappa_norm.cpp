#include "kappa/kappa_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/min_norm.hpp"

namespace kappa {

namespace {

constexpr double kSpanTol = 1e-10;

// Exact polytope rendering of a ball when one exists: points, 1-D segments,
// cross-polytopes (L1) and boxes (LInf, moderate dimension).
bool polytopal_ball(const Ball& b, ClosedSet* out) {
  const std::size_t d = b.center.size();
  const bool exact = b.radius == 0.0 || d == 1 || b.norm == NormKind::L1 ||
                     (b.norm == NormKind::LInf && d <= 16);
  if (!exact) return false;
  *out = ClosedSet::polytope(inscribe_ball(b, 2).vertices);
  return true;
}

bool spans_contain(const std::vector<Vector>& inner,
                   const std::vector<Vector>& outer) {
  for (const auto& v : inner)
    if (norm2(orthogonal_component(v, outer)) > kSpanTol) return false;
  return true;
}

// ---- dense-sampling fallback --------------------------------------------

struct SampleSet {
  std::vector<Vector> points;
  double resolution = 0.0;  // covering step (heuristic for dimension >= 3)
};

bool inside_hull_2d(const Vector& p, const std::vector<Vector>& hull, double tol) {
  if (hull.size() == 1) return dist2(p, hull[0]) <= tol;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vector& a = hull[i];
    const Vector& b = hull[(i + 1) % hull.size()];
    double cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    if (cr < -tol) return false;
  }
  return true;
}

SampleSet solid_samples_polytope(const Polytope& poly) {
  SampleSet out;
  const std::size_t d = poly.vertices[0].size();
  out.points = poly.vertices;
  if (d == 1) {
    double lo = poly.vertices[0][0], hi = lo;
    for (const auto& v : poly.vertices) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    const int n = 4096;
    for (int i = 0; i <= n; ++i)
      out.points.push_back({lo + (hi - lo) * double(i) / n});
    out.resolution = (hi - lo) / n;
    return out;
  }
  if (d == 2) {
    auto hull = convex_hull_2d(poly.vertices);
    Vector lo = hull[0], hi = hull[0];
    for (const auto& v : hull)
      for (int a = 0; a < 2; ++a) {
        lo[a] = std::min(lo[a], v[a]);
        hi[a] = std::max(hi[a], v[a]);
      }
    double diam = std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
    double h = std::max(diam, 1e-12) / 128.0;
    double scale = 1.0 + diam * diam;
    for (double x = lo[0]; x <= hi[0] + h / 2; x += h)
      for (double y = lo[1]; y <= hi[1] + h / 2; y += h)
        if (inside_hull_2d({x, y}, hull, 1e-12 * scale))
          out.points.push_back({x, y});
    int density = 256;
    auto edge = boundary_points(ClosedSet::polytope(poly.vertices), density);
    out.points.insert(out.points.end(), edge.begin(), edge.end());
    out.resolution = 2.0 * h;
    return out;
  }
  // Dimension >= 3: vertices plus seeded convex combinations; the reported
  // resolution is a heuristic coverage radius, not a certified bound.
  Rng rng(0x9bdc0a5317ULL);
  const int m = 20000;
  double diam = 0.0;
  for (const auto& a : poly.vertices)
    for (const auto& b : poly.vertices) diam = std::max(diam, dist2(a, b));
  for (int i = 0; i < m; ++i) {
    std::vector<double> w(poly.vertices.size());
    double s = 0.0;
    for (auto& x : w) {
      x = -std::log(1.0 - rng.uniform());
      s += x;
    }
    Vector p = zeros(d);
    for (std::size_t j = 0; j < w.size(); ++j)
      for (std::size_t a = 0; a < d; ++a)
        p[a] += w[j] / s * poly.vertices[j][a];
    out.points.push_back(std::move(p));
  }
  out.resolution = 4.0 * diam * std::pow(double(m), -1.0 / double(d));
  return out;
}

SampleSet solid_samples_ball(const Ball& b) {
  SampleSet out;
  const std::size_t d = b.center.size();
  out.points.push_back(b.center);
  if (b.radius == 0.0) return out;
  if (d == 1) {
    const int n = 4096;
    for (int i = 0; i <= n; ++i)
      out.points.push_back({b.center[0] - b.radius + 2.0 * b.radius * i / n});
    out.resolution = 2.0 * b.radius / n;
    return out;
  }
  const int shells = d == 2 ? 64 : 8;
  for (int k = 1; k <= shells; ++k) {
    Ball shell{b.center, b.radius * k / shells, b.norm};
    auto pts = boundary_points(ClosedSet::ball(shell.center, shell.radius, b.norm),
                               d == 2 ? 64 : 24);
    out.points.insert(out.points.end(), pts.begin(), pts.end());
  }
  out.resolution = d == 2 ? 2.0 * b.radius / shells : b.radius / 2.0;
  return out;
}

SampleSet solid_samples(const ClosedSet& A) {
  if (const auto* p = A.as<Polytope>()) return solid_samples_polytope(*p);
  if (const auto* b = A.as<Ball>()) return solid_samples_ball(*b);
  throw std::invalid_argument("rho_bar: no sampling scheme for this source");
}

// Boundary-only samples of a ball; valid for suprema of convex integrands.
SampleSet sphere_samples(const Ball& b) {
  SampleSet out;
  const std::size_t d = b.center.size();
  if (b.radius == 0.0 || d == 1) {
    out.points = boundary_points(ClosedSet::ball(b.center, b.radius, b.norm), 1);
    return out;
  }
  const int density = d == 2 ? 512 : 64;
  out.points =
      boundary_points(ClosedSet::ball(b.center, b.radius, b.norm), density);
  if (d == 2)
    out.resolution = 2.0 * 3.14159265358979323846 * b.radius / (8.0 * density);
  else
    out.resolution = 3.5 * b.radius / std::sqrt(double(out.points.size()));
  return out;
}

RhoBarDetail from_samples(const SampleSet& s, const ClosedSet& B) {
  RhoBarDetail d;
  d.exact = false;
  d.resolution = s.resolution;
  d.samples = s.points.size();
  d.value = 0.0;
  for (const auto& p : s.points) d.value = std::max(d.value, rho(p, B));
  return d;
}

RhoBarDetail exact(double v) { return {v, true, 0.0, 0}; }

}  // namespace

KappaValue rho(const Vector& x, const ClosedSet& C) {
  if (C.is_empty()) return kInf;
  check_dim(x, *C.dimension(), "rho");
  struct V {
    const Vector& x;
    KappaValue operator()(const Ball& b) const {
      return std::max(0.0, norm(sub(x, b.center), b.norm) - b.radius);
    }
    KappaValue operator()(const Polytope& p) const {
      return detail::dist_to_hull(x, p.vertices);
    }
    KappaValue operator()(const Subspace& s) const {
      return norm2(orthogonal_component(sub(x, s.offset), s.basis));
    }
    KappaValue operator()(const UnionSet& u) const {
      KappaValue m = kInf;
      for (const auto& p : u.parts) m = std::min(m, rho(x, p));
      return m;
    }
    KappaValue operator()(const EmptySet&) const { return kInf; }
  };
  return std::visit(V{x}, C.rep());
}

RhoBarDetail rho_bar_detailed(const ClosedSet& A, const ClosedSet& B) {
  if (A.is_empty())
    throw std::invalid_argument("rho_bar: source set must be nonempty");
  if (B.is_empty()) return exact(kInf);
  if (A.dimension() && B.dimension() && *A.dimension() != *B.dimension())
    throw std::invalid_argument("rho_bar: dimension mismatch");

  // Union source: the supremum splits over the parts.
  if (const auto* u = A.as<UnionSet>()) {
    RhoBarDetail best = exact(0.0);
    for (const auto& part : u->parts) {
      RhoBarDetail r = rho_bar_detailed(part, B);
      best.value = std::max(best.value, r.value);
      best.exact = best.exact && r.exact;
      best.resolution = std::max(best.resolution, r.resolution);
      best.samples += r.samples;
    }
    return best;
  }

  const bool b_convex = !B.as<UnionSet>();

  // Polytope source against a convex target: x -> rho(x,B) is convex, so the
  // supremum over the hull is attained at a vertex.
  if (const auto* p = A.as<Polytope>()) {
    if (b_convex) {
      double v = 0.0;
      for (const auto& vert : p->vertices) v = std::max(v, rho(vert, B));
      return exact(v);
    }
    return from_samples(solid_samples(A), B);
  }

  if (const auto* ba = A.as<Ball>()) {
    // Same-norm ball targets: sup over the ball of ||x - c_B|| - r_B.
    if (const auto* bb = B.as<Ball>()) {
      if (ba->norm == bb->norm) {
        double sep = norm(sub(ba->center, bb->center), ba->norm);
        return exact(std::max(0.0, sep + ba->radius - bb->radius));
      }
      // Mixed norms: render the target exactly as a polytope when possible,
      // so that the convex-target rules below see a Euclidean distance.
      ClosedSet bp = ClosedSet::empty();
      if (polytopal_ball(*bb, &bp)) return rho_bar_detailed(A, bp);
    }
    // Polytopal ball sources reduce exactly to the polytope-source rule.
    ClosedSet ap = ClosedSet::empty();
    if (polytopal_ball(*ba, &ap)) return rho_bar_detailed(ap, B);

    if (ba->norm == NormKind::L2) {
      if (const auto* sb = B.as<Subspace>()) {
        // Projection of an L2 ball onto the orthogonal complement is again a
        // ball of the same radius (or the set is fully covered).
        Vector w = orthogonal_component(sub(ba->center, sb->offset), sb->basis);
        if (sb->basis.size() == ba->center.size()) return exact(0.0);
        return exact(norm2(w) + ba->radius);
      }
      if (b_convex) {
        // B is a polytope or a high-dimensional LInf ball here; both
        // distances are 1-Lipschitz for Euclidean moves, and moving away
        // from the nearest point attains the bound.
        double c_dist = rho(ba->center, B);
        if (c_dist > 1e-12) return exact(c_dist + ba->radius);
        return from_samples(sphere_samples(*ba), B);
      }
    }
    return from_samples(solid_samples(A), B);
  }

  if (const auto* sa = A.as<Subspace>()) {
    if (sa->basis.empty()) return exact(rho(sa->offset, B));
    // Unbounded source: finite only when some affine subspace inside B covers
    // every direction of A.
    std::vector<const Subspace*> covers;
    if (const auto* sb = B.as<Subspace>()) {
      if (spans_contain(sa->basis, sb->basis)) covers.push_back(sb);
    } else if (const auto* ub = B.as<UnionSet>()) {
      for (const auto& part : ub->parts)
        if (const auto* sp = part.as<Subspace>())
          if (spans_contain(sa->basis, sp->basis)) covers.push_back(sp);
    }
    if (covers.empty()) return exact(kInf);
    double best = kInf;
    for (const auto* sp : covers) {
      Vector w = orthogonal_component(sub(sa->offset, sp->offset), sp->basis);
      best = std::min(best, norm2(w));
    }
    return exact(best);
  }

  throw std::invalid_argument("rho_bar: unsupported source variant");
}

KappaValue rho_bar(const ClosedSet& A, const ClosedSet& B) {
  return rho_bar_detailed(A, B).value;
}

KappaValue metric_d(const ClosedSet& A, const ClosedSet& B) {
  if (A.is_empty() || B.is_empty())
    throw std::invalid_argument("metric_d: arguments must be nonempty");
  return rho_bar(A, B) + rho_bar(B, A);
}

QuotientResult quotient_project(const Vector& x, const ClosedSet& M) {
  const auto* s = M.as<Subspace>();
  if (!s)
    throw std::invalid_argument("quotient_project: M must be a Subspace");
  for (double v : s->offset)
    if (v != 0.0)
      throw std::invalid_argument(
          "quotient_project: subspace must pass through the origin");
  check_dim(x, s->offset.size(), "quotient_project");
  Vector rep = orthogonal_component(x, s->basis);
  double n = norm2(rep);
  return {std::move(rep), n};
}

KappaValue extend_to_singleton(const Vector& x, int N) {
  if (N < 1)
    throw std::invalid_argument("extend_to_singleton: N must be positive");
  if (x.empty())
    throw std::invalid_argument("extend_to_singleton: empty vector");
  // n -> rho(x, Ball(0, 1/n)) is nondecreasing, so the max over 1..N is the
  // term at n = N.
  return rho(x, ClosedSet::ball(zeros(x.size()), 1.0 / N));
}

SeminormFamily SeminormFamily::of(std::vector<ClosedSet> members) {
  for (const auto& m : members) {
    const auto* s = m.as<Subspace>();
    if (!s)
      throw std::invalid_argument("SeminormFamily: members must be Subspaces");
    for (double v : s->offset)
      if (v != 0.0)
        throw std::invalid_argument(
            "SeminormFamily: members must pass through the origin");
  }
  return SeminormFamily{std::move(members)};
}

KappaValue seminorm_sup(const SeminormFamily& F, const Vector& x) {
  KappaValue q = 0.0;
  for (const auto& m : F.members) q = std::max(q, rho(x, m));
  return q;
}

PerturbResult perturb_bound(const ClosedSet& c_v, double eps) {
  if (!std::isfinite(eps) || eps <= 0.0)
    throw std::invalid_argument("perturb_bound: eps must be positive");
  if (c_v.is_empty())
    throw std::invalid_argument("perturb_bound: set must be nonempty");
  if (c_v.as<UnionSet>())
    throw std::invalid_argument("perturb_bound: set must be convex");
  if (const auto* s = c_v.as<Subspace>()) {
    if (!s->basis.empty() && s->basis.size() < s->offset.size())
      throw std::invalid_argument(
          "perturb_bound: cl(M + Ball) of a proper subspace is not "
          "representable in the closed-set family");
  }
  const std::size_t d = *c_v.dimension();
  ClosedSet sigma = ClosedSet::ball(zeros(d), eps / 2.0);
  ClosedSet dilated = minkowski_sum_cl(c_v, sigma);
  return {std::move(sigma), metric_d(dilated, c_v)};
}

}  // namespace kappa
