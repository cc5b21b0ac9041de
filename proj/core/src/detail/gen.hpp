#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "kappa/closed_set.hpp"
#include "kappa/geometry.hpp"

// Seeded instance generators and witness formatting shared by the randomized
// suites. Internal to the library.
namespace kappa::detail {

inline std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string fmt_vec(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt_num(v[i]);
  }
  return s + ")";
}

std::string describe(const ClosedSet& C);

// Random geometry, all Euclidean. Shapes live inside [-scale, scale]^d.
ClosedSet random_polytope(Rng& rng, std::size_t d, double extent = 2.0);
ClosedSet random_ball(Rng& rng, std::size_t d, double extent = 2.0);
ClosedSet random_subspace(Rng& rng, std::size_t d, double extent = 2.0);
// Mix of the above plus unions of two bounded parts.
ClosedSet random_closed_set(Rng& rng, std::size_t d, double extent = 2.0);
// Convex variants only (no unions).
ClosedSet random_convex_set(Rng& rng, std::size_t d, double extent = 2.0);

// A point of C (exact member up to roundoff).
Vector random_point_in(Rng& rng, const ClosedSet& C);

// A superset of C built by dilation / augmentation.
ClosedSet random_superset(Rng& rng, const ClosedSet& C);

}  // namespace kappa::detail
