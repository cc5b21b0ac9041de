#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kappa {

// Finite strict partial order, candidate interval order.  Construction
// validates uniqueness of ids, irreflexivity and transitivity; a preorder
// with equivalent elements (x < y < x) is rejected, so callers must
// quotient such inputs to equivalence classes first.
class IntervalOrder {
 public:
  static IntervalOrder make(
      std::vector<std::string> elements,
      const std::vector<std::pair<std::string, std::string>>& less_pairs);

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  std::size_t index_of(const std::string& id) const;
  bool less(std::size_t i, std::size_t j) const { return less_[i][j]; }
  // Strict predecessor bitmask of element i (n <= 64).
  std::uint64_t pred_mask(std::size_t i) const { return preds_[i]; }

 private:
  IntervalOrder() = default;
  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> less_;
  std::vector<std::uint64_t> preds_;
};

// Interval representation x -> [v(x), v(x) + sigma(x)].
struct Representation {
  std::map<std::string, double> v;
  std::map<std::string, double> sigma;

  // Validates: same key sets, sigma >= 0 everywhere, finite values.
  static Representation make(std::map<std::string, double> v,
                             std::map<std::string, double> sigma);
};

// Real-valued function on element ids with a strictly positive weight.
struct FunctionOnT {
  std::map<std::string, double> values;
  std::map<std::string, double> phi;  // same keys as values, all > 0

  static FunctionOnT of(std::map<std::string, double> values);
  static FunctionOnT weighted(std::map<std::string, double> values,
                              std::map<std::string, double> phi);
};

// Weighted sup seminorm max_x |f(x)| phi(x).
double seminorm(const FunctionOnT& f);

// Chains given as totally ordered id lists (list order = chain order), with
// optional per-chain value bounds.
struct ChainFamily {
  std::vector<std::vector<std::string>> chains;
  std::map<std::size_t, std::pair<double, double>> bounds;

  static ChainFamily of(std::vector<std::vector<std::string>> chains);
  static ChainFamily with_bounds(
      std::vector<std::vector<std::string>> chains,
      std::map<std::size_t, std::pair<double, double>> bounds);
};

// One per-chain constraint: |g(x) - target(x)| * weight(x) <= radius for
// every x on the chain.
struct ConstraintEntry {
  std::vector<std::string> ids;
  std::vector<double> targets;
  std::vector<double> weights;
  double radius = 0.0;
};

struct ConstraintSet {
  std::vector<ConstraintEntry> entries;

  static ConstraintSet make(std::vector<ConstraintEntry> entries);
  // Membership: every entry's weighted sup deviation is within its radius.
  // g must be defined on all constrained ids.
  bool contains(const FunctionOnT& g) const;
};

// True iff the order contains no pair a<b, c<d with neither a<d nor c<b
// (the 2+2 test, scanned exhaustively).
bool check_interval_order(const IntervalOrder& p);

// Integer-rank interval representation from the inclusion chain of strict
// predecessor sets; the returned representation is verified against every
// ordered pair before being returned.  Throws std::invalid_argument when p
// is not an interval order, std::logic_error if verification fails.
Representation find_representation(const IntervalOrder& p);

struct VerifyDetail {
  bool ok = true;
  // Smallest slack over all pair checks: for x<y the strict gap
  // v(y) - (v(x)+sigma(x)), for incomparable-or-reversed pairs the amount
  // by which the strict inequality fails to hold (>= 0 required).
  double min_margin = 0.0;
  std::string witness;  // first violated pair, if any
};

bool verify_representation(const IntervalOrder& p, const Representation& r);
VerifyDetail verify_representation_detailed(const IntervalOrder& p,
                                            const Representation& r);

struct ProjectionResult {
  FunctionOnT projection;
  double distance = 0.0;  // unweighted sup-distance to the input
};

// Sup-norm projection onto the cone of functions nondecreasing on every
// chain: the midpoint (M+m)/2 of the running max of g over
// predecessors-or-self and the running min over successors-or-self in the
// generated preorder.  Weights are ignored by the projection (phi = 1
// semantics); the input's phi is carried through to the output.  A cyclic
// generated order throws std::invalid_argument.
ProjectionResult monotone_project_sup(const FunctionOnT& g,
                                      const ChainFamily& chains);

struct FeasibilityResult {
  bool feasible = false;
  std::optional<FunctionOnT> witness;
  std::string note;
};

// Decides whether some function is nondecreasing on every chain and lies in
// every per-point interval [target - r/w, target + r/w] induced by the
// constraint set.  Cycles in the generated preorder are quotiented to
// equality classes.  Witnesses are re-verified before being returned.
FeasibilityResult cone_feasibility(const ConstraintSet& c,
                                   const ChainFamily& chains);

struct FitResult {
  FunctionOnT fit;
  double epsilon = 0.0;
};

// Minimal sup-deviation fit subject to the two-sided slope constraints
//   C2 (x2 - x1) <= g~(x2) - g~(x1) <= C1 (x2 - x1)   for x1 < x2,
// solved by binary search on epsilon with difference-constraint feasibility
// via shortest-path relaxation.  Requires 0 <= C2 <= C1 (else
// std::invalid_argument) and distinct positions covering all ids.
FitResult constrained_fit(const FunctionOnT& g,
                          const std::map<std::string, double>& positions,
                          double c1, double c2);

// Constraint set capturing f on each chain with the given radii (aligned
// with chains by index).  Radius 0 encodes the exact-fiber case; f itself
// always satisfies the result.
ConstraintSet build_constraint_set(const FunctionOnT& f,
                                   const ChainFamily& chains,
                                   const std::vector<double>& radii);

}  // namespace kappa
