#pragma once

#include <cstddef>
#include <vector>

#include "kappa/closed_set.hpp"
#include "kappa/geometry.hpp"

namespace kappa {

// Distance from a point to a closed set, measured in the set's NormKind
// (Euclidean for polytopes, subspaces and unions thereof). Empty -> +inf.
KappaValue rho(const Vector& x, const ClosedSet& C);

// rho_bar(A, B) = sup over x in A of rho(x, B).
//
// Exact paths: A a polytope against a convex B (vertex maximum), balls
// against balls, subspace sources, and unions of these. Everything else is
// a dense-sampling estimate whose sampling resolution is reported; the value
// then carries an absolute error of at most `resolution` (rho is
// 1-Lipschitz in x).
struct RhoBarDetail {
  KappaValue value = 0.0;
  bool exact = true;
  double resolution = 0.0;    // 0 when exact
  std::size_t samples = 0;    // 0 when exact
};
RhoBarDetail rho_bar_detailed(const ClosedSet& A, const ClosedSet& B);
KappaValue rho_bar(const ClosedSet& A, const ClosedSet& B);

// D(A, B) = rho_bar(A, B) + rho_bar(B, A); a metric on nonempty closed sets.
KappaValue metric_d(const ClosedSet& A, const ClosedSet& B);

// Representative of x in the quotient by a linear subspace M (through the
// origin) and its quotient norm; the norm equals rho(x, M).
struct QuotientResult {
  Vector representative;
  KappaValue norm = 0.0;
};
QuotientResult quotient_project(const Vector& x, const ClosedSet& M);

// max over 1 <= n <= N of rho(x, Ball(0, 1/n)); within 1/N of the Euclidean
// norm of x.
KappaValue extend_to_singleton(const Vector& x, int N);

// Finite family of linear subspaces through the origin; each member M_i
// induces the seminorm p_i(x) = rho(x, M_i).
struct SeminormFamily {
  std::vector<ClosedSet> members;
  // Validates every member (Subspace variant, zero offset).
  static SeminormFamily of(std::vector<ClosedSet> members);
};

// sup_i p_i(x); 0 for the empty family.
KappaValue seminorm_sup(const SeminormFamily& F, const Vector& x);

// Perturbation bound: C_sigma = Ball(0, eps/2) together with the computed
// D(cl(C_v + C_sigma), C_v), which is < eps for every nonempty convex C_v.
struct PerturbResult {
  ClosedSet c_sigma;
  KappaValue d = 0.0;
};
PerturbResult perturb_bound(const ClosedSet& c_v, double eps);

}  // namespace kappa
