#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kappa/closed_set.hpp"
#include "kappa/geometry.hpp"

namespace kappa {

// A candidate kappa-norm under test: any function of (point, closed set).
using KappaEvaluator =
    std::function<KappaValue(const Vector&, const ClosedSet&)>;

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t dimension = 2;
  int instances = 200;
  double tolerance = 1e-9;
};

struct AxiomCheck {
  std::string name;
  bool pass = true;
  double worst_violation = 0.0;
  std::string witness;  // empty when no violation was recorded
  int evaluated = 0;    // instances exercised
  int skipped = 0;      // instances skipped for structural reasons
};

struct SuiteReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
  const AxiomCheck* find(const std::string& name) const;
};

// Randomized verification of axioms (N1), (N2), (N3) as a 1-Lipschitz
// modulus, (N4) on nested polytope chains, (N5a), (N5b), (N6), (N7) and
// (N8) against the given evaluator. Geometry is Euclidean. Failures become
// report entries, never exceptions.
SuiteReport axiom_suite(const KappaEvaluator& evaluator,
                        const SuiteConfig& config);

}  // namespace kappa
