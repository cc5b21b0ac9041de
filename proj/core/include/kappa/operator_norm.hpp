#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "kappa/axiom_suite.hpp"
#include "kappa/closed_set.hpp"
#include "kappa/geometry.hpp"

namespace kappa {

// Dense row-major square matrix.
using Matrix = std::vector<Vector>;

Matrix identity_matrix(std::size_t d);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_scale(double lambda, const Matrix& a);
Vector mat_apply(const Matrix& a, const Vector& x);
double mat_determinant(const Matrix& a);
// Spectral (2-norm) condition number; +inf for singular matrices.
double mat_condition(const Matrix& a);
// Largest singular value.
double mat_spectral_norm(const Matrix& a);

// An invertible linear operator on R^d.  Construction validates squareness,
// finiteness and invertibility (|det| > 1e-12 relative to scale) and caches
// the determinant and spectral condition number.
class Operator {
 public:
  explicit Operator(Matrix m);

  // Returns nullopt instead of throwing when the matrix is not invertible.
  static std::optional<Operator> try_make(Matrix m);

  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.size(); }
  double determinant() const { return det_; }
  double condition() const { return cond_; }

  Vector apply(const Vector& x) const { return mat_apply(matrix_, x); }

 private:
  Operator() = default;
  Matrix matrix_;
  double det_ = 0.0;
  double cond_ = 0.0;
};

// Nonempty finite collection of operators.
struct FiniteOpSet {
  std::vector<Operator> ops;
};

// Operator-norm ball around a center, realized for computation by a seeded
// inner sample of sample_size elements (the center is always included).
struct OpBall {
  Operator center;
  double radius = 0.0;
  int sample_size = 64;
  std::uint64_t seed = 2024;
};

struct EmptyOpSet {};

class OperatorSet {
 public:
  using Rep = std::variant<FiniteOpSet, OpBall, EmptyOpSet>;

  static OperatorSet finite(std::vector<Operator> ops);
  static OperatorSet op_ball(Operator center, double radius,
                             int sample_size = 64, std::uint64_t seed = 2024);
  static OperatorSet empty();

  bool is_empty() const { return std::holds_alternative<EmptyOpSet>(rep_); }
  std::optional<std::size_t> dim() const;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&rep_);
  }
  const Rep& rep() const { return rep_; }

 private:
  explicit OperatorSet(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

// Materialize the finite representation used for the inner infimum: the ops
// of a FiniteOpSet, or the seeded inner sample of an OpBall (center plus
// sample_size - 1 draws; pass a multiplier to refine the sample).
std::vector<Matrix> operator_samples(const OperatorSet& s, int multiplier = 1);

// One probe of the conditional operator norm: a point x outside a convex,
// balanced, bounded set E whose interior contains 0.  Balls are realized by
// an inscribed polytope (64 boundary vertices in 2-D) which is then used
// consistently in both the numerator image and the denominator rho(x, E).
struct OpProbe {
  Vector x;
  ClosedSet e;              // as given
  std::vector<Vector> e_vertices;  // polytope realization used everywhere
  KappaValue rho_value;     // rho(x, conv(e_vertices)), cached
  double radius_bound;      // max vertex norm, used for Lipschitz moduli
};

class ProbeFamily {
 public:
  // Validates each probe: E must be a centered Ball with positive radius or
  // a balanced polytope with 0 in its interior; rho(x, E) must be positive.
  static ProbeFamily of(std::vector<std::pair<Vector, ClosedSet>> probes);

  // Seeded default family mixing boxes, cross-polytopes and symmetrized
  // random polytopes.
  static ProbeFamily default_family(std::uint64_t seed, std::size_t dimension,
                                    int count = 8);

  const std::vector<OpProbe>& probes() const { return probes_; }
  std::size_t dimension() const { return probes_.front().x.size(); }

 private:
  ProbeFamily() = default;
  std::vector<OpProbe> probes_;
};

struct RhoLDetail {
  KappaValue value = 0.0;    // reported value
  KappaValue refined = 0.0;  // value with the OpBall sample doubled
  bool inner_exact = true;   // true for FiniteOpSet (inner inf is exact)
};

// Sampled conditional operator norm: max over probes of
//   min_{B in S} rho((B - A)x, (B - A)E) / rho(x, E).
// The probe supremum is a lower bound of the full supremum; for OpBall the
// inner infimum is an upper bound from the finite sample, so the reported
// value carries a refinement bracket in the detailed variant.
KappaValue rho_L_sampled(const Operator& a, const OperatorSet& s,
                         const ProbeFamily& p);
RhoLDetail rho_L_sampled_detailed(const Operator& a, const OperatorSet& s,
                                  const ProbeFamily& p);

// Conditional axiom suite for rho_L_sampled over FiniteOpSet instances:
// (N1 forward), (N2), (N3) as a Lipschitz modulus in A, (N5a), (N5b),
// (N6), (N7).  Sums and scalings whose results are singular fall outside
// the operator family and are skipped with a per-check count.
SuiteReport operator_axiom_suite(const SuiteConfig& config);

}  // namespace kappa
