#pragma once

// Independent brute-force oracles used by the unit and acceptance tests.
// Everything here is deliberately written from first principles (grids,
// exhaustive enumeration, textbook formulas) so that agreement with the
// library is meaningful cross-validation rather than a tautology.

#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

#include "kappa/closed_set.hpp"
#include "kappa/geometry.hpp"

namespace kappa::oracle {

// ---- 2-D polygon geometry (exact elementary formulas) ----

// Euclidean distance from p to the segment [a, b].
double point_segment_dist(const Vector& p, const Vector& a, const Vector& b);

// Even-odd crossing test; points on the boundary may land on either side,
// callers combine with point_segment_dist for robust containment.
bool inside_polygon(const Vector& p, const std::vector<Vector>& poly);

// Distance from p to the closed convex polygon (0 when inside).
double dist_to_polygon(const Vector& p, const std::vector<Vector>& poly);

// Boundary samples at arc-length step `step`, always including vertices.
// A single-vertex polygon yields that vertex.
std::vector<Vector> boundary_samples(const std::vector<Vector>& poly,
                                     double step);

// sup_{x in A} dist(x, B) via boundary sampling of A (the supremum of a
// convex function over a convex body is attained on the boundary) and the
// exact point-to-polygon distance.
double rho_bar_grid(const std::vector<Vector>& a_poly,
                    const std::vector<Vector>& b_poly, double step);

// Symmetrized sum of the two directed distances.
double metric_d_grid(const std::vector<Vector>& a_poly,
                     const std::vector<Vector>& b_poly, double step);

// ---- kappa-form grid oracle ----

// Parameter-grid samples of a Ball or Polytope boundary (edges subdivided at
// parameter step `step` with endpoints included; balls sampled at angle step
// ~ step). Single points yield themselves.
std::vector<Vector> form_grid_points(const ClosedSet& s, double step);

// Grid search for inf_{a in A, b in B} |<b - y, a - x>|: scans the signed
// bilinear values over the product of boundary grids, declaring 0 on a sign
// straddle. Because the bilinear form attains its extrema over a product of
// convex bodies at extreme-point pairs, and the grids contain all vertices,
// the straddle decision is exact for polytopes.
double form_grid(const Vector& x, const ClosedSet& a, const Vector& y,
                 const ClosedSet& b, double step);

// ---- classical one-step ODE reference ----

// Fourth-order Runge-Kutta from t0 to t1 with step ~h (last step shortened).
Vector rk4(const std::function<Vector(double, const Vector&)>& f, Vector x0,
           double t0, double t1, double h);

// ---- interval-order enumeration oracles ----

// Encodes a strict relation on n <= 6 labeled elements: two bits per
// unordered pair (i, j), i < j, in lexicographic pair order
// (00 incomparable, 01 i<j, 10 j<i).
std::uint32_t relation_code(int n,
                            const std::vector<std::vector<bool>>& less);

// Calls fn once per strict partial order on {0..n-1} (irreflexive,
// transitive), passing the `less` matrix; returns the number visited.
// Enumerates all 3^(n(n-2)/2+...) pair assignments and keeps the transitive
// ones, so it is independent of any library order validation.
std::size_t for_each_poset(
    int n, const std::function<void(const std::vector<std::vector<bool>>&)>& fn);

// The set of relation codes realizable by closed intervals with integer
// endpoints in {0..2n}: enumerated by brute force over all open/close token
// sequences of n labeled intervals ((2n)!/2^n sequences; each sequence is an
// integer-endpoint representation with endpoints = token positions, and any
// integer-endpoint representation sorts into such a sequence).
std::unordered_set<std::uint32_t> representable_codes(int n);

// ---- isotonic / fit oracles ----

// Exhaustive minimax distance to the monotone cone: for the preorder
// closure given as ordered pairs (i, j) meaning i precedes j,
// eps* = max over pairs of (g_i - g_j)/2 clamped at 0. This is the exact
// optimum of the sup-norm isotonic problem.
double minimax_iso_eps(const std::vector<double>& values,
                       const std::vector<std::pair<int, int>>& closure_pairs);

// Exact optimal epsilon for the slope-constrained sup fit on positions
// x_1 < ... < x_n: the largest of the necessary pairwise relaxations
// max(0, (c2*dx - dg)/2, (dg - c1*dx)/2) over all pairs. Each pairwise bound
// is necessary by interval arithmetic, and the library's feasibility check
// certifies attainability, so this is both brute force and a lower bound.
double fit_eps_pairwise(const std::vector<double>& positions,
                        const std::vector<double>& values, double c1,
                        double c2);

}  // namespace kappa::oracle
