#include "kappa/closed_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/min_norm.hpp"

namespace kappa {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::size_t common_dimension(const std::vector<Vector>& vs, const char* what) {
  require(!vs.empty(), "empty point list");
  std::size_t d = vs[0].size();
  for (const auto& v : vs) check_dim(v, d, what);
  return d;
}

Vector orth_component(const Vector& x, const std::vector<Vector>& basis) {
  return orthogonal_component(x, basis);
}

}  // namespace

ClosedSet ClosedSet::ball(Vector center, double radius, NormKind k) {
  require(!center.empty(), "ball: empty center");
  require(radius >= 0.0, "ball: negative radius");
  require(std::isfinite(radius), "ball: radius must be finite");
  for (double c : center) require(std::isfinite(c), "ball: center must be finite");
  return ClosedSet(Ball{std::move(center), radius, k});
}

ClosedSet ClosedSet::polytope(std::vector<Vector> vertices) {
  std::size_t d = common_dimension(vertices, "polytope");
  require(d > 0, "polytope: zero-dimensional ambient space");
  for (const auto& v : vertices)
    for (double c : v) require(std::isfinite(c), "polytope: vertices must be finite");
  return ClosedSet(Polytope{std::move(vertices)});
}

ClosedSet ClosedSet::point(Vector p) { return polytope({std::move(p)}); }

ClosedSet ClosedSet::subspace(std::vector<Vector> basis, Vector offset) {
  require(!offset.empty(), "subspace: empty offset");
  std::size_t d = offset.size();
  for (const auto& b : basis) {
    check_dim(b, d, "subspace basis");
    require(std::fabs(norm2(b) - 1.0) <= 1e-12, "subspace: basis not unit length");
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      require(std::fabs(dot(basis[i], basis[j])) <= 1e-12,
              "subspace: basis not orthogonal");
  require(basis.size() <= d, "subspace: basis larger than ambient dimension");
  return ClosedSet(Subspace{std::move(basis), std::move(offset)});
}

ClosedSet ClosedSet::union_of(std::vector<ClosedSet> parts) {
  require(!parts.empty(), "union: no parts");
  std::optional<std::size_t> d;
  for (const auto& p : parts) {
    require(!p.is_empty(), "union: empty part");
    auto pd = p.dimension();
    if (d && pd && *d != *pd) throw std::invalid_argument("union: mixed dimensions");
    if (pd) d = pd;
  }
  return ClosedSet(UnionSet{std::move(parts)});
}

ClosedSet ClosedSet::empty() { return ClosedSet(EmptySet{}); }

bool ClosedSet::is_bounded() const {
  struct V {
    bool operator()(const Ball&) const { return true; }
    bool operator()(const Polytope&) const { return true; }
    bool operator()(const Subspace& s) const { return s.basis.empty(); }
    bool operator()(const UnionSet& u) const {
      return std::all_of(u.parts.begin(), u.parts.end(),
                         [](const ClosedSet& p) { return p.is_bounded(); });
    }
    bool operator()(const EmptySet&) const { return true; }
  };
  return std::visit(V{}, rep_);
}

std::optional<std::size_t> ClosedSet::dimension() const {
  struct V {
    std::optional<std::size_t> operator()(const Ball& b) const { return b.center.size(); }
    std::optional<std::size_t> operator()(const Polytope& p) const {
      return p.vertices[0].size();
    }
    std::optional<std::size_t> operator()(const Subspace& s) const {
      return s.offset.size();
    }
    std::optional<std::size_t> operator()(const UnionSet& u) const {
      for (const auto& p : u.parts)
        if (auto d = p.dimension()) return d;
      return std::nullopt;
    }
    std::optional<std::size_t> operator()(const EmptySet&) const { return std::nullopt; }
  };
  return std::visit(V{}, rep_);
}

bool member(const Vector& x, const ClosedSet& C, double tol) {
  struct V {
    const Vector& x;
    double tol;
    bool operator()(const Ball& b) const {
      check_dim(x, b.center.size(), "member");
      return norm(sub(x, b.center), b.norm) <= b.radius + tol;
    }
    bool operator()(const Polytope& p) const {
      check_dim(x, p.vertices[0].size(), "member");
      return detail::dist_to_hull(x, p.vertices) <= tol;
    }
    bool operator()(const Subspace& s) const {
      check_dim(x, s.offset.size(), "member");
      return norm2(orth_component(sub(x, s.offset), s.basis)) <= tol;
    }
    bool operator()(const UnionSet& u) const {
      return std::any_of(u.parts.begin(), u.parts.end(),
                         [&](const ClosedSet& p) { return member(x, p, tol); });
    }
    bool operator()(const EmptySet&) const { return false; }
  };
  return std::visit(V{x, tol}, C.rep());
}

double bounding_radius(const ClosedSet& C) {
  struct V {
    double operator()(const Ball& b) const {
      double factor = 1.0;
      if (b.norm == NormKind::LInf) factor = std::sqrt(double(b.center.size()));
      return norm2(b.center) + factor * b.radius;
    }
    double operator()(const Polytope& p) const {
      double r = 0.0;
      for (const auto& v : p.vertices) r = std::max(r, norm2(v));
      return r;
    }
    double operator()(const Subspace& s) const {
      return s.basis.empty() ? norm2(s.offset) : kInf;
    }
    double operator()(const UnionSet& u) const {
      double r = 0.0;
      for (const auto& p : u.parts) r = std::max(r, bounding_radius(p));
      return r;
    }
    double operator()(const EmptySet&) const {
      throw std::invalid_argument("bounding_radius: empty set");
    }
  };
  return std::visit(V{}, C.rep());
}

std::vector<Vector> convex_hull_2d(std::vector<Vector> pts, double eps) {
  for (const auto& p : pts) check_dim(p, 2, "convex_hull_2d");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  double scale = 1.0;
  for (const auto& p : pts) scale = std::max({scale, std::fabs(p[0]), std::fabs(p[1])});
  const double tol = eps * scale * scale;

  auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };

  std::vector<Vector> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= tol) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= tol) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

std::vector<Vector> prune_vertices(std::vector<Vector> pts, double eps) {
  if (pts.size() <= 1) return pts;
  if (pts[0].size() == 2) return convex_hull_2d(std::move(pts), 1e-12);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // Drop points within eps of the hull of the others, one at a time, so
  // near-coincident extreme points cannot eliminate each other.
  for (std::size_t i = 0; i < pts.size() && pts.size() > 1;) {
    std::vector<Vector> rest;
    rest.reserve(pts.size() - 1);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) rest.push_back(pts[j]);
    if (detail::dist_to_hull(pts[i], rest) <= eps) {
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return pts;
}

namespace {

// Unit directions for the given norm's sphere in R^d, deterministic.
std::vector<Vector> sphere_directions(std::size_t d, NormKind k, int count) {
  std::vector<Vector> dirs;
  if (d == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  if (d == 2) {
    int m = std::max(count, 4);
    dirs.reserve(m);
    for (int i = 0; i < m; ++i) {
      double th = 2.0 * kPi * i / m;
      Vector u{std::cos(th), std::sin(th)};
      double nu = norm(u, k);
      dirs.push_back(scale(1.0 / nu, u));
    }
    return dirs;
  }
  if (d == 3) {
    // Fibonacci sphere.
    int m = std::max(count, 8);
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / m;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vector u{r * std::cos(ga * i), r * std::sin(ga * i), z};
      double nu = norm(u, k);
      dirs.push_back(scale(1.0 / nu, u));
    }
    return dirs;
  }
  // d >= 4: axis directions plus a fixed seeded spray.
  for (std::size_t a = 0; a < d; ++a) {
    for (double s : {1.0, -1.0}) {
      Vector u = zeros(d);
      u[a] = s;
      dirs.push_back(u);
    }
  }
  Rng rng(0x5e7b0a11u);
  for (int i = 0; i < count; ++i) {
    Vector u = rng.unit_vector(d);
    double nu = norm(u, k);
    dirs.push_back(scale(1.0 / nu, u));
  }
  return dirs;
}

}  // namespace

Polytope inscribe_ball(const Ball& b, int m) {
  const std::size_t d = b.center.size();
  std::vector<Vector> verts;
  if (b.radius == 0.0) {
    verts.push_back(b.center);
    return Polytope{verts};
  }
  if (b.norm == NormKind::L1) {
    // Cross-polytope: exact.
    for (std::size_t a = 0; a < d; ++a)
      for (double s : {1.0, -1.0}) {
        Vector v = b.center;
        v[a] += s * b.radius;
        verts.push_back(v);
      }
    return Polytope{verts};
  }
  if (b.norm == NormKind::LInf && d <= 16) {
    // Box corners: exact.
    for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
      Vector v = b.center;
      for (std::size_t a = 0; a < d; ++a)
        v[a] += (mask >> a & 1) ? b.radius : -b.radius;
      verts.push_back(v);
    }
    return Polytope{verts};
  }
  for (const auto& u : sphere_directions(d, b.norm, m)) {
    Vector v = b.center;
    for (std::size_t a = 0; a < d; ++a) v[a] += b.radius * u[a];
    verts.push_back(v);
  }
  return Polytope{verts};
}

std::vector<Vector> boundary_points(const ClosedSet& C, int density) {
  struct V {
    int density;
    std::vector<Vector> operator()(const Ball& b) const {
      if (b.center.size() == 1)
        return {{b.center[0] - b.radius}, {b.center[0] + b.radius}};
      auto dirs = sphere_directions(b.center.size(), b.norm,
                                    b.center.size() == 2 ? 8 * density
                                                         : 2 * density * density);
      std::vector<Vector> out;
      out.reserve(dirs.size());
      for (const auto& u : dirs) {
        Vector v = b.center;
        for (std::size_t a = 0; a < v.size(); ++a) v[a] += b.radius * u[a];
        out.push_back(v);
      }
      return out;
    }
    std::vector<Vector> operator()(const Polytope& p) const {
      const std::size_t d = p.vertices[0].size();
      if (d != 2 || p.vertices.size() <= 2) return p.vertices;
      auto h = convex_hull_2d(p.vertices);
      if (h.size() <= 2) return h;
      std::vector<Vector> out;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const Vector& a = h[i];
        const Vector& b = h[(i + 1) % h.size()];
        for (int k = 0; k < density; ++k) {
          double t = double(k) / density;
          out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
        }
      }
      return out;
    }
    std::vector<Vector> operator()(const Subspace& s) const {
      if (s.basis.empty()) return {s.offset};
      throw std::invalid_argument("boundary_points: unbounded subspace");
    }
    std::vector<Vector> operator()(const UnionSet& u) const {
      std::vector<Vector> out;
      for (const auto& p : u.parts) {
        auto pts = boundary_points(p, density);
        out.insert(out.end(), pts.begin(), pts.end());
      }
      return out;
    }
    std::vector<Vector> operator()(const EmptySet&) const { return {}; }
  };
  return std::visit(V{density}, C.rep());
}

namespace {

// Largest angular gap covered by a direction sample; used to bound the
// outer slack of inscribed-sphere approximations.
double covering_slack(const std::vector<Vector>& dirs, std::size_t d, double radius) {
  if (d == 1) return 0.0;
  if (d == 2) {
    // Regular m-gon: chord sagitta.
    return radius * (1.0 - std::cos(kPi / double(dirs.size())));
  }
  auto probes = sphere_directions(d, NormKind::L2, 4096);
  double worst = 0.0;
  for (const auto& q : probes) {
    double best = -1.0;
    for (const auto& u : dirs) best = std::max(best, dot(q, u));
    worst = std::max(worst, 1.0 - std::max(best, -1.0));
  }
  // cos gap = 1 - worst; sagitta bound.
  return radius * worst;
}

MinkowskiResult sum_poly_poly(const Polytope& A, const Polytope& B) {
  std::vector<Vector> verts;
  verts.reserve(A.vertices.size() * B.vertices.size());
  for (const auto& a : A.vertices)
    for (const auto& b : B.vertices) verts.push_back(add(a, b));
  if (verts[0].size() == 2) {
    verts = convex_hull_2d(std::move(verts));
  } else if (verts.size() > 48) {
    verts = prune_vertices(std::move(verts), 1e-12);
  }
  return {ClosedSet::polytope(std::move(verts)), 0.0, true};
}

MinkowskiResult sum_poly_ball(const Polytope& A, const Ball& b, int facets) {
  const std::size_t d = b.center.size();
  if (A.vertices.size() == 1) {
    return {ClosedSet::ball(add(b.center, A.vertices[0]), b.radius, b.norm), 0.0,
            true};
  }
  if (b.radius == 0.0 || b.norm != NormKind::L2 || d == 1) {
    Polytope bp = inscribe_ball(b, facets);  // exact in these cases
    return sum_poly_poly(A, bp);
  }
  const int cnt = d == 2 ? facets : facets * facets / 2;
  Polytope bp = inscribe_ball(b, cnt);
  auto r = sum_poly_poly(A, bp);
  auto dirs = sphere_directions(d, NormKind::L2, cnt);
  double slack = covering_slack(dirs, d, b.radius);
  // d >= 3 slack comes from a sampled covering estimate; pad it.
  r.outer_slack = d == 2 ? slack : 2.0 * slack;
  r.exact = false;
  return r;
}

}  // namespace

MinkowskiResult minkowski_sum_detailed(const ClosedSet& A, const ClosedSet& B,
                                       int ball_facets) {
  if (A.is_empty() || B.is_empty())
    throw std::invalid_argument("minkowski_sum: Empty operand");
  if (A.as<UnionSet>() || B.as<UnionSet>())
    throw std::invalid_argument("minkowski_sum: Union operand");
  auto da = A.dimension(), db = B.dimension();
  if (*da != *db) throw std::invalid_argument("minkowski_sum: dimension mismatch");

  const auto* pa = A.as<Polytope>();
  const auto* pb = B.as<Polytope>();
  const auto* ba = A.as<Ball>();
  const auto* bb = B.as<Ball>();
  const auto* sa = A.as<Subspace>();
  const auto* sb = B.as<Subspace>();

  if (pa && pb) return sum_poly_poly(*pa, *pb);
  if (ba && bb) {
    if (ba->norm == bb->norm) {
      return {ClosedSet::ball(add(ba->center, bb->center), ba->radius + bb->radius,
                              ba->norm),
              0.0, true};
    }
    // Mixed norms: polytopal balls convert exactly.
    if (ba->norm != NormKind::L2)
      return minkowski_sum_detailed(
          ClosedSet::polytope(inscribe_ball(*ba, ball_facets).vertices), B,
          ball_facets);
    return minkowski_sum_detailed(
        A, ClosedSet::polytope(inscribe_ball(*bb, ball_facets).vertices),
        ball_facets);
  }
  if (pa && bb) return sum_poly_ball(*pa, *bb, ball_facets);
  if (ba && pb) return sum_poly_ball(*pb, *ba, ball_facets);

  if (sa && sb) {
    // span(V1 + V2) + (o1 + o2): orthonormalize the joint spanning set.
    std::vector<Vector> basis = sa->basis;
    for (const auto& v : sb->basis) {
      Vector w = orth_component(v, basis);
      double n = norm2(w);
      if (n > 1e-10) basis.push_back(scale(1.0 / n, w));
    }
    return {ClosedSet::subspace(std::move(basis), add(sa->offset, sb->offset)), 0.0,
            true};
  }
  if (sb && !sa) return minkowski_sum_detailed(B, A, ball_facets);
  if (sa) {
    // Subspace + bounded convex set: representable only when the other set
    // collapses to a point orthogonally to the span.
    if (sa->basis.size() == *da) {
      return {ClosedSet::subspace(sa->basis, sa->offset), 0.0, true};
    }
    if (sa->basis.empty()) {
      // Plain translation by offset.
      return {affine_transform(1.0, sa->offset, B), 0.0, true};
    }
    if (pb) {
      Vector p0 = orth_component(sub(pb->vertices[0], sa->offset), sa->basis);
      for (const auto& v : pb->vertices) {
        Vector q = orth_component(sub(v, sa->offset), sa->basis);
        if (dist2(q, p0) > 1e-10)
          throw std::invalid_argument(
              "minkowski_sum: Subspace + Polytope is representable only when "
              "the polytope collapses to a point orthogonally to the span");
      }
      return {ClosedSet::subspace(sa->basis, add(sa->offset, pb->vertices[0])), 0.0,
              true};
    }
    if (bb && bb->radius == 0.0) {
      return {ClosedSet::subspace(sa->basis, add(sa->offset, bb->center)), 0.0, true};
    }
    throw std::invalid_argument(
        "minkowski_sum: Subspace + Ball with positive radius is not "
        "representable in the closed-set family");
  }
  throw std::invalid_argument("minkowski_sum: unsupported combination");
}

ClosedSet minkowski_sum_cl(const ClosedSet& A, const ClosedSet& B) {
  return minkowski_sum_detailed(A, B).sum;
}

ClosedSet affine_transform(double lambda, const Vector& y, const ClosedSet& C) {
  if (!std::isfinite(lambda) || lambda == 0.0)
    throw std::invalid_argument("affine_transform: lambda must be finite and nonzero");
  if (C.is_empty()) return ClosedSet::empty();
  auto d = *C.dimension();
  check_dim(y, d, "affine_transform");

  struct V {
    double l;
    const Vector& y;
    ClosedSet operator()(const Ball& b) const {
      return ClosedSet::ball(add(scale(l, b.center), y), std::fabs(l) * b.radius,
                             b.norm);
    }
    ClosedSet operator()(const Polytope& p) const {
      std::vector<Vector> vs;
      vs.reserve(p.vertices.size());
      for (const auto& v : p.vertices) vs.push_back(add(scale(l, v), y));
      return ClosedSet::polytope(std::move(vs));
    }
    ClosedSet operator()(const Subspace& s) const {
      return ClosedSet::subspace(s.basis, add(scale(l, s.offset), y));
    }
    ClosedSet operator()(const UnionSet& u) const {
      std::vector<ClosedSet> parts;
      parts.reserve(u.parts.size());
      for (const auto& p : u.parts) parts.push_back(affine_transform(l, y, p));
      return ClosedSet::union_of(std::move(parts));
    }
    ClosedSet operator()(const EmptySet&) const { return ClosedSet::empty(); }
  };
  return std::visit(V{lambda, y}, C.rep());
}

}  // namespace kappa
