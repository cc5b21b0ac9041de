#pragma once

#include <vector>

#include "kappa/geometry.hpp"

namespace kappa::detail {

// Euclidean distance from x to conv(pts) together with the nearest point.
// Finite active-set method (Wolfe's min-norm-point algorithm); the returned
// distance is always an upper bound, tight to ~1e-13 * scale.
struct MinNorm {
  double distance;
  Vector nearest;
};

MinNorm min_norm_point(const std::vector<Vector>& pts, const Vector& x);

// Convenience: distance only.
double dist_to_hull(const Vector& x, const std::vector<Vector>& pts);

}  // namespace kappa::detail
