#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kappa/closed_set.hpp"
#include "kappa/geometry.hpp"
#include "kappa/operator_norm.hpp"

namespace kappa {

// Time-dependent vector field f(t, x).  Fields built by the affine factories
// carry their linear part, which unlocks exact set images and a closed-form
// contraction constant; fields from `nonlinear` are treated as black boxes.
struct VectorField {
  std::function<Vector(double, const Vector&)> eval;
  bool is_affine = false;
  Matrix lin;                          // d x d, valid when is_affine
  std::function<Vector(double)> drift; // b(t), valid when is_affine
  std::size_t dim = 0;

  Vector operator()(double t, const Vector& x) const;

  static VectorField affine(Matrix l, Vector b_const);
  static VectorField affine(Matrix l, std::function<Vector(double)> b);
  static VectorField zero(std::size_t d);
  static VectorField identity(std::size_t d);  // f(t, x) = x
  static VectorField rotation90();             // d = 2, f(t, x) = (-x2, x1)
  static VectorField nonlinear(
      std::size_t d, std::function<Vector(double, const Vector&)> eval);
};

struct SolverConfig {
  double h = 1e-3;
  double picard_tol = 1e-8;
  int max_picard_iters = 200;
  double hull_prune_eps = 1e-9;
};

// Trajectory of closed sets over a strictly increasing time grid.
struct SetTrajectory {
  std::vector<double> times;
  std::vector<ClosedSet> sets;

  // Validates: equal lengths, at least one node, strictly increasing times,
  // all sets nonempty.
  static SetTrajectory make(std::vector<double> times,
                            std::vector<ClosedSet> sets);
  std::size_t size() const { return times.size(); }
};

struct PointTrajectory {
  std::vector<double> times;
  std::vector<Vector> states;
};

// Empirical lower bound for the contraction constant C_A: the max over
// seeded samples x (with rho(x, A) > 0) of
//   rho(f(t, x), set_image(f, t, A)) / rho(x, A).
double lipschitz_ratio(const VectorField& f, const ClosedSet& a, double t,
                       std::uint64_t seed, int samples = 64);

// Image { f(t, x) : x in A }.  Exact hull of mapped vertices for affine f on
// polytopes; balls map exactly when the linear part is a scalar multiple of
// a rotation (L2 balls) or of the identity (any norm), and are otherwise
// converted to an inscribed 64-gon first.  For nonlinear f the mapped-vertex
// hull is an approximation: measure it with set_image_deficiency.
// Union or Subspace (or Empty) input throws std::invalid_argument.
ClosedSet set_image(const VectorField& f, double t, const ClosedSet& a);

// Max distance from a mapped dense sample of A to set_image(f, t, A); zero
// (up to tolerance) when the image hull is exact.
double set_image_deficiency(const VectorField& f, double t, const ClosedSet& a,
                            int density = 16, std::uint64_t seed = 99);

// Riemann–Minkowski integral of a set-valued map over [t1, t2] on a uniform
// grid of step <= h: the Minkowski sum over subintervals of the averaged
// endpoint sets (per-interval trapezoid deviation from a left sum),
//   sum_j (h/2) (F(tau_j) (+) F(tau_{j+1})).
// Throws std::invalid_argument if t2 <= t1 or any F(tau_j) is empty/Union.
ClosedSet set_integral(const std::function<ClosedSet(double)>& f, double t1,
                       double t2, double h, double hull_prune_eps = 1e-9);

// Picard iteration x_{k+1}(t) = x0 + int_0^t f(tau, x_k) dtau with trapezoid
// quadrature on a uniform grid; stops when the sup-node change drops below
// cfg.picard_tol.  Throws std::runtime_error (with the residual) on
// non-convergence within cfg.max_picard_iters.
PointTrajectory solve_point_ode(const VectorField& f, const Vector& x0,
                                double t_end, const SolverConfig& cfg);

// One Picard step for the set equation: the trajectory
//   t |-> cl( A0 (+) int_{t_first}^{t} f(tau, traj(tau)) dtau )
// on traj's own grid, via set_image and the integral quadrature above.
SetTrajectory picard_step_set(const VectorField& f, const ClosedSet& a0,
                              const SetTrajectory& traj,
                              const SolverConfig& cfg);

struct SetOdeDiagnostics {
  double c_hat = 0.0;                  // contraction-constant estimate
  int segments = 1;                    // grid segments with c_hat * len < 1
  std::vector<int> picard_iterations;  // per segment
  std::vector<double> final_residuals; // per segment, last sup-node D change
  bool f_zero_hypothesis_ok = true;    // f(t, 0) = 0 on sampled nodes
  bool converged = true;
};

struct SetOdeResult {
  SetTrajectory trajectory;
  SetOdeDiagnostics diagnostics;
};

// Fixed point A(t) = cl( A0 (+) int_0^t f(tau, A(tau)) dtau ) by segmented
// Picard iteration from the constant-A0 trajectory.  A0 must be convex
// (Polytope or Ball).  This is the Minkowski-integral solution; for
// non-scalar dynamics it differs from the pointwise reachable set.
SetOdeResult solve_set_ode(const VectorField& f, const ClosedSet& a0,
                           double t_end, const SolverConfig& cfg);

struct ContractionReport {
  double ratio = 0.0;  // D of the two integrals over D(A1, A2); 0 if D = 0
  double bound = 0.0;  // c_hat * (t2 - t1)
};

ContractionReport contraction_check(const VectorField& f, const ClosedSet& a1,
                                    const ClosedSet& a2, double t1, double t2,
                                    const SolverConfig& cfg);

}  // namespace kappa
