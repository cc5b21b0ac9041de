#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "kappa/geometry.hpp"

namespace kappa {

// Closed subsets of R^d, the second argument of a kappa-norm. The
// representation is a tagged union of the supported constructors; all set
// operations keep results inside this family (or fail loudly).

struct Ball {
  Vector center;
  double radius = 0.0;
  NormKind norm = NormKind::L2;
};

struct Polytope {
  // Convex hull of finitely many points. Redundant (non-extreme) points are
  // permitted; canonicalization is available via prune_vertices().
  std::vector<Vector> vertices;
};

struct Subspace {
  // Affine subspace offset + span(basis); basis must be orthonormal to
  // 1e-12. An empty basis denotes the single point {offset}.
  std::vector<Vector> basis;
  Vector offset;
};

class ClosedSet;

struct UnionSet {
  std::vector<ClosedSet> parts;  // nonempty; parts themselves nonempty
};

struct EmptySet {};

class ClosedSet {
 public:
  using Rep = std::variant<Ball, Polytope, Subspace, UnionSet, EmptySet>;

  static ClosedSet ball(Vector center, double radius, NormKind k = NormKind::L2);
  static ClosedSet polytope(std::vector<Vector> vertices);
  static ClosedSet point(Vector p);
  static ClosedSet subspace(std::vector<Vector> basis, Vector offset);
  static ClosedSet union_of(std::vector<ClosedSet> parts);
  static ClosedSet empty();

  bool is_empty() const { return std::holds_alternative<EmptySet>(rep_); }
  bool is_bounded() const;
  // nullopt for the empty set (dimension-agnostic).
  std::optional<std::size_t> dimension() const;

  const Rep& rep() const { return rep_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&rep_);
  }

 private:
  explicit ClosedSet(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

// Membership up to tolerance (Euclidean for polytopes/subspaces, the ball's
// own norm for balls). The empty set contains nothing.
bool member(const Vector& x, const ClosedSet& C, double tol = 1e-9);

// max_{y in C} ||y||_2; +inf for unbounded sets, error for the empty set.
double bounding_radius(const ClosedSet& C);

// --- Polytope utilities -----------------------------------------------------

// 2-D convex hull (monotone chain), counter-clockwise, collinear points
// dropped at tolerance eps.
std::vector<Vector> convex_hull_2d(std::vector<Vector> pts, double eps = 1e-12);

// Remove points that are within eps of the hull of the remaining ones.
// Exact in any dimension; O(n^2) distance solves.
std::vector<Vector> prune_vertices(std::vector<Vector> pts, double eps = 1e-9);

// Deterministic boundary sample (supports the sampled fallbacks and the
// inscribed-polytope conversions). `density` scales the sample count.
std::vector<Vector> boundary_points(const ClosedSet& C, int density);

// Inscribed polytope for a ball: regular m-gon for d=2, Fibonacci sphere for
// d=3, cross-polytope + seeded directions for higher d. Exact for d=1.
Polytope inscribe_ball(const Ball& b, int m);

// --- Set arithmetic ----------------------------------------------------------

// cl(A + B), Minkowski sum. Exact for Polytope+Polytope, Ball+Ball of the
// same NormKind, and Subspace+C when C collapses to a point orthogonally to
// the subspace. Ball+Polytope falls back to an inner polytope approximation
// with a reported outer slack. Unsupported combinations throw.
struct MinkowskiResult {
  ClosedSet sum;       // inner approximation (or exact)
  double outer_slack;  // true sum lies within this Euclidean slack of `sum`
  bool exact;
};
// Closed Minkowski sum of two nonempty convex sets. Union or Empty operands
// are rejected. `sum` is exact for polytope+polytope, same-norm ball+ball and
// the representable subspace combinations; ball operands that force a
// polytopal approximation yield an inner polytope whose Hausdorff slack from
// the true sum is bounded by `outer_slack`.
MinkowskiResult minkowski_sum_detailed(const ClosedSet& A, const ClosedSet& B,
                                       int ball_facets = 64);
ClosedSet minkowski_sum_cl(const ClosedSet& A, const ClosedSet& B);

// lambda * C + y elementwise; lambda must be finite and nonzero.
ClosedSet affine_transform(double lambda, const Vector& y, const ClosedSet& C);

}  // namespace kappa
