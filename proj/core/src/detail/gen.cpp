#include "detail/gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kappa::detail {

std::string describe(const ClosedSet& C) {
  struct V {
    std::string operator()(const Ball& b) const {
      return "ball(center=" + fmt_vec(b.center) + ", r=" + fmt_num(b.radius) +
             ", " + to_string(b.norm) + ")";
    }
    std::string operator()(const Polytope& p) const {
      std::string s = "polytope{";
      for (std::size_t i = 0; i < p.vertices.size() && i < 8; ++i) {
        if (i) s += ", ";
        s += fmt_vec(p.vertices[i]);
      }
      if (p.vertices.size() > 8) s += ", ...";
      return s + "}";
    }
    std::string operator()(const Subspace& s) const {
      return "subspace(dim=" + std::to_string(s.basis.size()) +
             ", offset=" + fmt_vec(s.offset) + ")";
    }
    std::string operator()(const UnionSet& u) const {
      std::string s = "union[";
      for (std::size_t i = 0; i < u.parts.size(); ++i) {
        if (i) s += " | ";
        s += describe(u.parts[i]);
      }
      return s + "]";
    }
    std::string operator()(const EmptySet&) const { return "empty"; }
  };
  return std::visit(V{}, C.rep());
}

ClosedSet random_polytope(Rng& rng, std::size_t d, double extent) {
  int k = rng.uniform_int(int(d) + 1, int(d) + 4);
  std::vector<Vector> vs;
  vs.reserve(std::size_t(k));
  for (int i = 0; i < k; ++i) vs.push_back(rng.box(d, -extent, extent));
  return ClosedSet::polytope(std::move(vs));
}

ClosedSet random_ball(Rng& rng, std::size_t d, double extent) {
  Vector c = rng.box(d, -extent / 2, extent / 2);
  double r = rng.uniform(0.1, extent / 2);
  return ClosedSet::ball(std::move(c), r);
}

ClosedSet random_subspace(Rng& rng, std::size_t d, double extent) {
  std::size_t dim = std::size_t(rng.uniform_int(0, int(d) - 1));
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < dim; ++i) {
    Vector v = rng.unit_vector(d);
    Vector w = orthogonal_component(v, basis);
    double n = norm2(w);
    if (n > 1e-6) basis.push_back(scale(1.0 / n, w));
  }
  return ClosedSet::subspace(std::move(basis), rng.box(d, -extent / 2, extent / 2));
}

ClosedSet random_convex_set(Rng& rng, std::size_t d, double extent) {
  double u = rng.uniform();
  if (u < 0.45) return random_ball(rng, d, extent);
  if (u < 0.90) return random_polytope(rng, d, extent);
  return random_subspace(rng, d, extent);
}

ClosedSet random_closed_set(Rng& rng, std::size_t d, double extent) {
  double u = rng.uniform();
  if (u < 0.80) return random_convex_set(rng, d, extent);
  std::vector<ClosedSet> parts;
  int k = rng.uniform_int(2, 3);
  for (int i = 0; i < k; ++i)
    parts.push_back(rng.uniform() < 0.5 ? random_ball(rng, d, extent)
                                        : random_polytope(rng, d, extent));
  return ClosedSet::union_of(std::move(parts));
}

Vector random_point_in(Rng& rng, const ClosedSet& C) {
  struct V {
    Rng& rng;
    Vector operator()(const Ball& b) const {
      std::size_t d = b.center.size();
      Vector u = rng.unit_vector(d);
      double t = rng.uniform() * b.radius;
      if (b.norm != NormKind::L2) {
        double nu = norm(u, b.norm);
        u = scale(1.0 / nu, u);
      }
      return add(b.center, scale(t, u));
    }
    Vector operator()(const Polytope& p) const {
      std::vector<double> w(p.vertices.size());
      double s = 0.0;
      for (auto& x : w) {
        x = -std::log(1.0 - rng.uniform());
        s += x;
      }
      Vector out = zeros(p.vertices[0].size());
      for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t a = 0; a < out.size(); ++a)
          out[a] += w[j] / s * p.vertices[j][a];
      return out;
    }
    Vector operator()(const Subspace& s) const {
      Vector out = s.offset;
      for (const auto& b : s.basis) {
        double t = rng.uniform(-2.0, 2.0);
        for (std::size_t a = 0; a < out.size(); ++a) out[a] += t * b[a];
      }
      return out;
    }
    Vector operator()(const UnionSet& u) const {
      std::size_t i = std::size_t(rng.uniform_int(0, int(u.parts.size()) - 1));
      return random_point_in(rng, u.parts[i]);
    }
    Vector operator()(const EmptySet&) const {
      throw std::invalid_argument("random_point_in: empty set");
    }
  };
  return std::visit(V{rng}, C.rep());
}

ClosedSet random_superset(Rng& rng, const ClosedSet& C) {
  struct V {
    Rng& rng;
    ClosedSet operator()(const Ball& b) const {
      return ClosedSet::ball(b.center, b.radius + rng.uniform(0.0, 1.0), b.norm);
    }
    ClosedSet operator()(const Polytope& p) const {
      // Scale about the centroid by a factor >= 1 (keeps every vertex).
      std::size_t d = p.vertices[0].size();
      Vector c = zeros(d);
      for (const auto& v : p.vertices)
        for (std::size_t a = 0; a < d; ++a) c[a] += v[a] / double(p.vertices.size());
      double f = 1.0 + rng.uniform(0.0, 0.8);
      std::vector<Vector> vs = p.vertices;
      for (auto& v : vs)
        for (std::size_t a = 0; a < d; ++a) v[a] = c[a] + f * (v[a] - c[a]);
      return ClosedSet::polytope(std::move(vs));
    }
    ClosedSet operator()(const Subspace& s) const {
      if (s.basis.size() == s.offset.size()) return ClosedSet::subspace(s.basis, s.offset);
      // Augment the span by one orthonormal direction.
      std::vector<Vector> basis = s.basis;
      for (int tries = 0; tries < 32; ++tries) {
        Vector w = orthogonal_component(rng.unit_vector(s.offset.size()), basis);
        double n = norm2(w);
        if (n > 1e-6) {
          basis.push_back(scale(1.0 / n, w));
          break;
        }
      }
      return ClosedSet::subspace(std::move(basis), s.offset);
    }
    ClosedSet operator()(const UnionSet& u) const {
      std::vector<ClosedSet> parts = u.parts;
      parts.push_back(random_ball(rng, *parts[0].dimension(), 2.0));
      return ClosedSet::union_of(std::move(parts));
    }
    ClosedSet operator()(const EmptySet&) const { return ClosedSet::empty(); }
  };
  // Some of the time, wrap into a union with an extra far part instead.
  if (!C.is_empty() && !C.as<UnionSet>() && rng.uniform() < 0.3) {
    std::size_t d = *C.dimension();
    Vector c = rng.box(d, 4.0, 6.0);
    std::vector<ClosedSet> parts;
    parts.push_back(C);
    parts.push_back(ClosedSet::ball(std::move(c), rng.uniform(0.1, 0.5)));
    return ClosedSet::union_of(std::move(parts));
  }
  return std::visit(V{rng}, C.rep());
}

}  // namespace kappa::detail
