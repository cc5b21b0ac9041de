#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kappa/axiom_suite.hpp"
#include "kappa/closed_set.hpp"
#include "kappa/geometry.hpp"

namespace kappa {

// One probe of a sampled dual norm: a point together with a closed set at
// positive distance from it.
struct Probe {
  Vector x;
  ClosedSet A;
  KappaValue rho_value;  // rho(x, A), cached at construction
};

// Finite probe family over which sampled suprema are taken.
class TestFamily {
 public:
  // Validates every probe: A must be a Polytope, Ball or Subspace with
  // rho(x, A) > 0 (and finite). Throws std::invalid_argument otherwise.
  static TestFamily of(std::vector<std::pair<Vector, ClosedSet>> probes);

  // Seeded default family: singleton polytopes at random points alternating
  // with unit balls at random centers.
  static TestFamily default_family(std::uint64_t seed, std::size_t dimension,
                                   int count = 32);

  const std::vector<Probe>& probes() const { return probes_; }

 private:
  std::vector<Probe> probes_;
};

// The concrete duality form inf over (a in A, b in B) of |<b - y, a - x>|.
//
// Exact for every combination of Polytope and Subspace arguments and for
// Polytope x Ball; pairs of non-polytopal balls are evaluated by sampling
// one ball and solving the other side in closed form, which yields an upper
// bound of the infimum within the sampling resolution (the bound
// kappa_form <= rho(x,A) * rho(y,B) is preserved because the sample always
// contains the nearest point to x). Empty set arguments give +infinity;
// Union arguments are rejected.
KappaValue kappa_form(const Vector& x, const ClosedSet& A, const Vector& y,
                      const ClosedSet& B);

// Orthogonal complement of a linear subspace through the origin.
ClosedSet annihilator(const ClosedSet& M);

// Absolute polar {z : |<q,z>| <= 1 for all q in A}. Supported: balls
// centered at the origin with positive radius (dual-norm ball of inverse
// radius), subspaces through the origin (annihilator) and polytopes of
// dimension <= 2 with the origin strictly inside the symmetrized hull.
ClosedSet polar(const ClosedSet& A);

// max over probes (x,A) of kappa_form(x,A,y,B)/rho(x,A); a lower bound of
// the full supremum over all admissible (x,A). Returns 0 when y lies in B.
KappaValue dual_kappa_norm_sampled(const Vector& y, const ClosedSet& B,
                                   const TestFamily& T);

// Mirror image: max over dual probes (y,B) of kappa_form(x,A,y,B)/rho(y,B);
// lower bound of the supremum, never exceeds rho(x, A).
KappaValue rho_tilde_sampled(const Vector& x, const ClosedSet& A,
                             const TestFamily& T_dual);

// Empirical equivalence constants between rho and the sampled rho-tilde:
// c1 = min rho/rho_tilde, c2 = max rho/rho_tilde over the usable samples.
// Samples with rho_tilde = 0 are excluded and reported as degeneracy
// witnesses instead of being folded into the constants.
struct EquivalenceReport {
  double c1 = 0.0;
  double c2 = 0.0;
  int used = 0;
  std::vector<std::string> degeneracy_witnesses;
};
EquivalenceReport equivalence_constants(
    const std::vector<std::pair<Vector, ClosedSet>>& samples,
    const TestFamily& t_dual);

// Randomized verification of (D1)(c), (D2), (D4) on nested chains, (D5a),
// (D5b), (D6), (D7) and (D8) for the concrete form on bounded Euclidean
// instances. Every check evaluates both sides exactly (instances are chosen
// so that no sampled form values are involved). Failures become report
// entries, never exceptions.
SuiteReport duality_axiom_suite(const SuiteConfig& config);

}  // namespace kappa
