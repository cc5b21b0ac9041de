#include "kappa/operator_norm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "detail/gen.hpp"
#include "detail/min_norm.hpp"
#include "kappa/kappa_norm.hpp"

namespace kappa {
namespace {

std::size_t checked_square(const Matrix& a, const char* what) {
  const std::size_t d = a.size();
  if (d == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix is empty");
  }
  for (const Vector& row : a) {
    if (row.size() != d) {
      throw std::invalid_argument(std::string(what) + ": matrix is not square");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) +
                                    ": matrix has non-finite entries");
      }
    }
  }
  return d;
}

Eigen::MatrixXd to_eigen(const Matrix& a) {
  const auto d = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

}  // namespace

Matrix identity_matrix(std::size_t d) {
  Matrix m(d, zeros(d));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  const std::size_t d = checked_square(a, "mat_add");
  if (checked_square(b, "mat_add") != d) {
    throw std::invalid_argument("mat_add: dimension mismatch");
  }
  Matrix r = a;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) r[i][j] += b[i][j];
  }
  return r;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  return mat_add(a, mat_scale(-1.0, b));
}

Matrix mat_scale(double lambda, const Matrix& a) {
  Matrix r = a;
  for (Vector& row : r) {
    for (double& v : row) v *= lambda;
  }
  return r;
}

Vector mat_apply(const Matrix& a, const Vector& x) {
  const std::size_t d = checked_square(a, "mat_apply");
  check_dim(x, d, "mat_apply: x");
  Vector y = zeros(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = dot(a[i], x);
  return y;
}

double mat_determinant(const Matrix& a) {
  checked_square(a, "mat_determinant");
  return to_eigen(a).determinant();
}

double mat_condition(const Matrix& a) {
  checked_square(a, "mat_condition");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

double mat_spectral_norm(const Matrix& a) {
  checked_square(a, "mat_spectral_norm");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  return svd.singularValues()(0);
}

Operator::Operator(Matrix m) {
  auto made = try_make(std::move(m));
  if (!made) {
    throw std::invalid_argument(
        "Operator: matrix is singular (|det| <= 1e-12)");
  }
  *this = std::move(*made);
}

std::optional<Operator> Operator::try_make(Matrix m) {
  checked_square(m, "Operator");
  const double det = mat_determinant(m);
  if (!(std::abs(det) > 1e-12)) return std::nullopt;
  Operator op;
  op.matrix_ = std::move(m);
  op.det_ = det;
  op.cond_ = mat_condition(op.matrix_);
  return op;
}

OperatorSet OperatorSet::finite(std::vector<Operator> ops) {
  if (ops.empty()) {
    throw std::invalid_argument("OperatorSet: FiniteSet must be nonempty");
  }
  const std::size_t d = ops.front().dim();
  for (const Operator& op : ops) {
    if (op.dim() != d) {
      throw std::invalid_argument("OperatorSet: mixed dimensions");
    }
  }
  return OperatorSet(FiniteOpSet{std::move(ops)});
}

OperatorSet OperatorSet::op_ball(Operator center, double radius,
                                 int sample_size, std::uint64_t seed) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("OperatorSet: OpBall radius must be >= 0");
  }
  if (sample_size < 1) {
    throw std::invalid_argument("OperatorSet: OpBall sample size must be >= 1");
  }
  return OperatorSet(OpBall{std::move(center), radius, sample_size, seed});
}

OperatorSet OperatorSet::empty() { return OperatorSet(EmptyOpSet{}); }

std::optional<std::size_t> OperatorSet::dim() const {
  if (const auto* f = as<FiniteOpSet>()) return f->ops.front().dim();
  if (const auto* b = as<OpBall>()) return b->center.dim();
  return std::nullopt;
}

std::vector<Matrix> operator_samples(const OperatorSet& s, int multiplier) {
  if (multiplier < 1) {
    throw std::invalid_argument("operator_samples: multiplier must be >= 1");
  }
  if (const auto* f = s.as<FiniteOpSet>()) {
    std::vector<Matrix> out;
    out.reserve(f->ops.size());
    for (const Operator& op : f->ops) out.push_back(op.matrix());
    return out;
  }
  const auto* b = s.as<OpBall>();
  if (b == nullptr) return {};
  const std::size_t d = b->center.dim();
  std::vector<Matrix> out;
  const int total = b->sample_size * multiplier;
  out.reserve(static_cast<std::size_t>(total));
  out.push_back(b->center.matrix());
  Rng rng(b->seed);
  for (int i = 1; i < total; ++i) {
    // Direction: a random matrix normalized to unit spectral norm; depth: a
    // uniform factor, so every sample lies inside the operator-norm ball.
    Matrix g(d, zeros(d));
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) g[r][c] = rng.uniform(-1.0, 1.0);
    }
    const double sn = mat_spectral_norm(g);
    if (sn <= 0.0) {
      --i;  // degenerate draw; repeat
      continue;
    }
    const double depth = rng.uniform();
    out.push_back(
        mat_add(b->center.matrix(), mat_scale(b->radius * depth / sn, g)));
  }
  return out;
}

ProbeFamily ProbeFamily::of(std::vector<std::pair<Vector, ClosedSet>> probes) {
  if (probes.empty()) {
    throw std::invalid_argument("ProbeFamily: probe list must be nonempty");
  }
  ProbeFamily fam;
  fam.probes_.reserve(probes.size());
  for (auto& [x, e] : probes) {
    const std::size_t d = x.size();
    if (e.dimension().value_or(d) != d) {
      throw std::invalid_argument("ProbeFamily: dimension mismatch");
    }
    std::vector<Vector> verts;
    if (const auto* b = e.as<Ball>()) {
      for (double v : b->center) {
        if (v != 0.0) {
          throw std::invalid_argument(
              "ProbeFamily: ball probes must be centered at the origin");
        }
      }
      if (!(b->radius > 0.0)) {
        throw std::invalid_argument(
            "ProbeFamily: ball probes need positive radius");
      }
      verts = inscribe_ball(*b, 64).vertices;
    } else if (const auto* p = e.as<Polytope>()) {
      verts = p->vertices;
      // Balanced: the reflection of every vertex stays in the set.
      for (const Vector& v : verts) {
        if (!member(scale(-1.0, v), e, 1e-9)) {
          throw std::invalid_argument("ProbeFamily: set is not balanced");
        }
      }
      // 0 interior: axis test at a scale-adaptive offset.  With a balanced
      // convex set, containing +-delta e_i for all axes certifies a ball of
      // radius delta/sqrt(d) the origin; see the cross-polytope hull.
      const double delta = 0.01 * std::max(1e-6, bounding_radius(e));
      for (std::size_t i = 0; i < d; ++i) {
        Vector probe_pt = zeros(d);
        probe_pt[i] = delta;
        if (!member(probe_pt, e, 1e-9) ||
            !member(scale(-1.0, probe_pt), e, 1e-9)) {
          throw std::invalid_argument(
              "ProbeFamily: 0 must be interior to the probe set");
        }
      }
    } else {
      throw std::invalid_argument(
          "ProbeFamily: probe sets must be balls or polytopes");
    }
    const KappaValue r = detail::dist_to_hull(x, verts);
    if (!(r > 0.0)) {
      throw std::invalid_argument("ProbeFamily: probe point lies in its set");
    }
    double rad = 0.0;
    for (const Vector& v : verts) rad = std::max(rad, norm2(v));
    fam.probes_.push_back(
        OpProbe{std::move(x), std::move(e), std::move(verts), r, rad});
  }
  return fam;
}

ProbeFamily ProbeFamily::default_family(std::uint64_t seed,
                                        std::size_t dimension, int count) {
  if (dimension == 0) {
    throw std::invalid_argument("ProbeFamily: dimension must be positive");
  }
  if (count <= 0) {
    throw std::invalid_argument("ProbeFamily: count must be positive");
  }
  Rng rng(seed);
  std::vector<std::pair<Vector, ClosedSet>> probes;
  probes.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    ClosedSet e = ClosedSet::point(zeros(dimension));
    switch (k % 3) {
      case 0:
        e = ClosedSet::ball(zeros(dimension), rng.uniform(0.5, 1.5),
                            NormKind::LInf);
        break;
      case 1:
        e = ClosedSet::ball(zeros(dimension), rng.uniform(0.5, 1.5),
                            NormKind::L2);
        break;
      default: {
        // Symmetrized random polytope; axis vertices guarantee an interior.
        std::vector<Vector> verts;
        for (std::size_t j = 0; j < dimension + 1; ++j) {
          Vector v = rng.box(dimension, -1.5, 1.5);
          verts.push_back(scale(-1.0, v));
          verts.push_back(std::move(v));
        }
        for (std::size_t i = 0; i < dimension; ++i) {
          Vector v = zeros(dimension);
          v[i] = 0.4;
          verts.push_back(scale(-1.0, v));
          verts.push_back(std::move(v));
        }
        e = ClosedSet::polytope(std::move(verts));
        break;
      }
    }
    Vector x = rng.box(dimension, -3.0, 3.0);
    while (rho(x, e) < 0.2) x = rng.box(dimension, -3.0, 3.0);
    probes.emplace_back(std::move(x), std::move(e));
  }
  return ProbeFamily::of(std::move(probes));
}

namespace {

// min over the sampled operators of rho((B-A)x, (B-A)E) for one probe,
// divided by rho(x, E).
double probe_ratio(const Matrix& diff, const OpProbe& probe) {
  std::vector<Vector> image;
  image.reserve(probe.e_vertices.size());
  for (const Vector& v : probe.e_vertices) image.push_back(mat_apply(diff, v));
  const Vector mx = mat_apply(diff, probe.x);
  return detail::dist_to_hull(mx, image) / probe.rho_value;
}

KappaValue evaluate_rho_l(const Matrix& a, const std::vector<Matrix>& samples,
                          const ProbeFamily& p) {
  KappaValue best = 0.0;
  for (const OpProbe& probe : p.probes()) {
    double inner = std::numeric_limits<double>::infinity();
    for (const Matrix& b : samples) {
      inner = std::min(inner, probe_ratio(mat_sub(b, a), probe));
      if (inner == 0.0) break;
    }
    best = std::max(best, inner);
  }
  return best;
}

}  // namespace

RhoLDetail rho_L_sampled_detailed(const Operator& a, const OperatorSet& s,
                                  const ProbeFamily& p) {
  if (s.is_empty()) return RhoLDetail{kInf, kInf, true};
  const std::size_t d = a.dim();
  if (s.dim().value_or(d) != d || p.dimension() != d) {
    throw std::invalid_argument("rho_L_sampled: dimension mismatch");
  }
  RhoLDetail out;
  out.value = evaluate_rho_l(a.matrix(), operator_samples(s, 1), p);
  if (s.as<OpBall>() != nullptr) {
    out.inner_exact = false;
    out.refined = evaluate_rho_l(a.matrix(), operator_samples(s, 2), p);
  } else {
    out.inner_exact = true;
    out.refined = out.value;
  }
  return out;
}

KappaValue rho_L_sampled(const Operator& a, const OperatorSet& s,
                         const ProbeFamily& p) {
  return rho_L_sampled_detailed(a, s, p).value;
}

namespace {

struct Recorder {
  AxiomCheck check;
  double tol = 0.0;

  Recorder(std::string name, double tolerance) : tol(tolerance) {
    check.name = std::move(name);
  }

  template <typename WitnessFn>
  void observe(double violation, WitnessFn&& witness) {
    ++check.evaluated;
    if (violation > check.worst_violation) {
      check.worst_violation = violation;
      if (violation > tol) check.witness = witness();
    }
    if (violation > tol) check.pass = false;
  }

  void skip() { ++check.skipped; }

  AxiomCheck done() && { return std::move(check); }
};

std::string mat_str(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ";";
    s += detail::fmt_vec(m[i]);
  }
  return s + "]";
}

Operator random_operator(Rng& rng, std::size_t d) {
  for (;;) {
    Matrix m(d, zeros(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m[i][j] = rng.uniform(-2.0, 2.0);
    }
    auto op = Operator::try_make(std::move(m));
    if (op && op->condition() <= 25.0) return std::move(*op);
  }
}

std::vector<Operator> random_operators(Rng& rng, std::size_t d, int n) {
  std::vector<Operator> ops;
  ops.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ops.push_back(random_operator(rng, d));
  return ops;
}

AxiomCheck check_op_n1(Rng& rng, const SuiteConfig& cfg,
                       const ProbeFamily& pf) {
  Recorder rec("(N1) forward", cfg.tolerance);
  const std::size_t d = cfg.dimension;
  for (int i = 0; i < cfg.instances; ++i) {
    auto ops = random_operators(rng, d, 3 + rng.uniform_int(0, 2));
    const Operator a = ops[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(ops.size()) - 1))];
    const double v = rho_L_sampled(a, OperatorSet::finite(ops), pf);
    rec.observe(std::abs(v), [&] {
      return "rho_L(A, S) with A in S gave " + detail::fmt_num(v) +
             " for A=" + mat_str(a.matrix());
    });
  }
  return std::move(rec).done();
}

AxiomCheck check_op_n2(Rng& rng, const SuiteConfig& cfg,
                       const ProbeFamily& pf) {
  Recorder rec("(N2)", cfg.tolerance);
  const std::size_t d = cfg.dimension;
  for (int i = 0; i < cfg.instances; ++i) {
    const Operator a = random_operator(rng, d);
    auto small_ops = random_operators(rng, d, 1 + rng.uniform_int(0, 2));
    auto big_ops = small_ops;
    const int extra = 1 + rng.uniform_int(0, 1);
    for (int j = 0; j < extra; ++j) big_ops.push_back(random_operator(rng, d));
    const double v_small = rho_L_sampled(a, OperatorSet::finite(small_ops), pf);
    const double v_big = rho_L_sampled(a, OperatorSet::finite(big_ops), pf);
    rec.observe(v_big - v_small, [&] {
      return "superset increased rho_L: " + detail::fmt_num(v_small) +
             " -> " + detail::fmt_num(v_big) + " A=" + mat_str(a.matrix());
    });
  }
  return std::move(rec).done();
}

AxiomCheck check_op_n3(Rng& rng, const SuiteConfig& cfg,
                       const ProbeFamily& pf) {
  Recorder rec("(N3) Lipschitz in A", cfg.tolerance);
  const std::size_t d = cfg.dimension;
  double k_mod = 0.0;
  for (const OpProbe& probe : pf.probes()) {
    k_mod = std::max(k_mod,
                     (norm2(probe.x) + probe.radius_bound) / probe.rho_value);
  }
  for (int i = 0; i < cfg.instances; ++i) {
    const Operator a1 = random_operator(rng, d);
    const Operator a2 = random_operator(rng, d);
    auto ops = random_operators(rng, d, 1 + rng.uniform_int(0, 2));
    const OperatorSet s = OperatorSet::finite(ops);
    const double v1 = rho_L_sampled(a1, s, pf);
    const double v2 = rho_L_sampled(a2, s, pf);
    const double dist = mat_spectral_norm(mat_sub(a2.matrix(), a1.matrix()));
    rec.observe(std::abs(v1 - v2) - k_mod * dist, [&] {
      return "Lipschitz modulus exceeded: |" + detail::fmt_num(v1) + " - " +
             detail::fmt_num(v2) + "| > " + detail::fmt_num(k_mod) + " * " +
             detail::fmt_num(dist);
    });
  }
  return std::move(rec).done();
}

// Random direction matrix for the (N5) families.  They are generated so
// that every difference B - A is a scalar multiple of one common direction
// M; then rho((B-A)x, (B-A)E) = |c| rho(Mx, ME) factors through every inf
// and sup and the two sum laws are exact scalar triangle inequalities.
// Fully independent differences (B1+B2) - (A1+A2) act on a shared probe
// point and set, which does NOT dominate the separate terms: rank-one
// alignments give genuine violations (see the unit suite).
Matrix random_direction(Rng& rng, std::size_t d) {
  while (true) {
    Matrix m(d, Vector(d, 0.0));
    double mass = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        m[r][c] = rng.uniform(-1.0, 1.0);
        mass += std::abs(m[r][c]);
      }
    }
    if (mass > 0.1) return m;
  }
}

// A + c*M as an Operator, if invertible.
std::optional<Operator> shifted(const Operator& a, double c, const Matrix& m) {
  return Operator::try_make(mat_add(a.matrix(), mat_scale(c, m)));
}

AxiomCheck check_op_n5a(Rng& rng, const SuiteConfig& cfg,
                        const ProbeFamily& pf) {
  Recorder rec("(N5a)", cfg.tolerance);
  const std::size_t d = cfg.dimension;
  for (int i = 0; i < cfg.instances; ++i) {
    const Operator a1 = random_operator(rng, d);
    const Operator a2 = random_operator(rng, d);
    const Matrix m = rng.uniform() < 0.25 ? identity_matrix(d)
                                          : random_direction(rng, d);
    auto shifts = [&](const Operator& center, int count) {
      std::vector<Operator> ops;
      for (int k = 0; k < count; ++k) {
        double c = rng.uniform(0.2, 1.5);
        if (rng.uniform() < 0.5) c = -c;
        auto b = shifted(center, c, m);
        if (!b) return std::vector<Operator>{};
        ops.push_back(std::move(*b));
      }
      return ops;
    };
    auto ops1 = shifts(a1, 1 + rng.uniform_int(0, 1));
    auto ops2 = shifts(a2, 1 + rng.uniform_int(0, 1));
    auto a12 = Operator::try_make(mat_add(a1.matrix(), a2.matrix()));
    if (ops1.empty() || ops2.empty() || !a12) {
      rec.skip();
      continue;
    }
    std::vector<Operator> sums;
    bool ok = true;
    for (const Operator& b1 : ops1) {
      for (const Operator& b2 : ops2) {
        auto s = Operator::try_make(mat_add(b1.matrix(), b2.matrix()));
        if (!s) {
          ok = false;
          break;
        }
        sums.push_back(std::move(*s));
      }
      if (!ok) break;
    }
    if (!ok) {
      rec.skip();
      continue;
    }
    const double lhs = rho_L_sampled(*a12, OperatorSet::finite(sums), pf);
    const double rhs = rho_L_sampled(a1, OperatorSet::finite(ops1), pf) +
                       rho_L_sampled(a2, OperatorSet::finite(ops2), pf);
    rec.observe(lhs - rhs, [&] {
      return "sum inequality failed: lhs=" + detail::fmt_num(lhs) +
             " rhs=" + detail::fmt_num(rhs) + " A1=" + mat_str(a1.matrix()) +
             " A2=" + mat_str(a2.matrix());
    });
  }
  return std::move(rec).done();
}

AxiomCheck check_op_n5b(Rng& rng, const SuiteConfig& cfg,
                        const ProbeFamily& pf) {
  Recorder rec("(N5b)", cfg.tolerance);
  const std::size_t d = cfg.dimension;
  for (int i = 0; i < cfg.instances; ++i) {
    const Operator a = random_operator(rng, d);
    // Both sets live on the affine line A + span{M}: every pairwise
    // difference is then a multiple of M and the chain inequality is a
    // scalar triangle inequality (see random_direction above).
    const Matrix m = rng.uniform() < 0.25 ? identity_matrix(d)
                                          : random_direction(rng, d);
    auto shifts = [&](int count) {
      std::vector<Operator> ops;
      for (int k = 0; k < count; ++k) {
        double c = rng.uniform(0.2, 1.5);
        if (rng.uniform() < 0.5) c = -c;
        auto b = shifted(a, c, m);
        if (!b) return std::vector<Operator>{};
        ops.push_back(std::move(*b));
      }
      return ops;
    };
    auto ops1 = shifts(1 + rng.uniform_int(0, 1));
    auto ops2 = shifts(1 + rng.uniform_int(0, 2));
    if (ops1.empty() || ops2.empty()) {
      rec.skip();
      continue;
    }
    const OperatorSet s1 = OperatorSet::finite(ops1);
    const double lhs = rho_L_sampled(a, s1, pf);
    double reach = 0.0;
    for (const Operator& b : ops2) {
      reach = std::max(reach, rho_L_sampled(b, s1, pf));
    }
    const double rhs = rho_L_sampled(a, OperatorSet::finite(ops2), pf) + reach;
    rec.observe(lhs - rhs, [&] {
      return "chain inequality failed: lhs=" + detail::fmt_num(lhs) +
             " rhs=" + detail::fmt_num(rhs) + " A=" + mat_str(a.matrix());
    });
  }
  return std::move(rec).done();
}

AxiomCheck check_op_n6(Rng& rng, const SuiteConfig& cfg,
                       const ProbeFamily& pf) {
  Recorder rec("(N6)", cfg.tolerance);
  const std::size_t d = cfg.dimension;
  for (int i = 0; i < cfg.instances; ++i) {
    const Operator a = random_operator(rng, d);
    auto ops = random_operators(rng, d, 1 + rng.uniform_int(0, 2));
    double lam = rng.uniform(0.3, 3.0);
    if (rng.uniform() < 0.5) lam = -lam;
    auto la = Operator::try_make(mat_scale(lam, a.matrix()));
    std::vector<Operator> lops;
    bool ok = la.has_value();
    for (const Operator& b : ops) {
      auto lb = Operator::try_make(mat_scale(lam, b.matrix()));
      if (!lb) {
        ok = false;
        break;
      }
      lops.push_back(std::move(*lb));
    }
    if (!ok) {
      rec.skip();
      continue;
    }
    const double base = rho_L_sampled(a, OperatorSet::finite(ops), pf);
    const double scaled = rho_L_sampled(*la, OperatorSet::finite(lops), pf);
    rec.observe(std::abs(scaled - std::abs(lam) * base), [&] {
      return "homogeneity failed: rho_L(lambda A, lambda S)=" +
             detail::fmt_num(scaled) + " vs |lambda| base=" +
             detail::fmt_num(std::abs(lam) * base);
    });
  }
  return std::move(rec).done();
}

AxiomCheck check_op_n7(Rng& rng, const SuiteConfig& cfg,
                       const ProbeFamily& pf) {
  Recorder rec("(N7)", cfg.tolerance);
  const std::size_t d = cfg.dimension;
  for (int i = 0; i < cfg.instances; ++i) {
    const Operator a = random_operator(rng, d);
    const Operator c = random_operator(rng, d);
    auto ops = random_operators(rng, d, 1 + rng.uniform_int(0, 2));
    auto ac = Operator::try_make(mat_add(a.matrix(), c.matrix()));
    std::vector<Operator> shifted;
    bool ok = ac.has_value();
    for (const Operator& b : ops) {
      auto bc = Operator::try_make(mat_add(b.matrix(), c.matrix()));
      if (!bc) {
        ok = false;
        break;
      }
      shifted.push_back(std::move(*bc));
    }
    if (!ok) {
      rec.skip();
      continue;
    }
    const double base = rho_L_sampled(a, OperatorSet::finite(ops), pf);
    const double moved = rho_L_sampled(*ac, OperatorSet::finite(shifted), pf);
    rec.observe(std::abs(moved - base), [&] {
      return "translation changed rho_L: " + detail::fmt_num(base) + " -> " +
             detail::fmt_num(moved) + " C=" + mat_str(c.matrix());
    });
  }
  return std::move(rec).done();
}

}  // namespace

SuiteReport operator_axiom_suite(const SuiteConfig& config) {
  if (config.dimension == 0) {
    throw std::invalid_argument(
        "operator_axiom_suite: dimension must be positive");
  }
  if (config.instances <= 0) {
    throw std::invalid_argument(
        "operator_axiom_suite: instances must be positive");
  }
  Rng root(config.seed);
  const ProbeFamily pf =
      ProbeFamily::default_family(config.seed ^ 0x9e3779b97f4a7c15ULL,
                                  config.dimension, 6);
  SuiteReport report;
  {
    Rng r = root.split(1);
    report.checks.push_back(check_op_n1(r, config, pf));
  }
  {
    Rng r = root.split(2);
    report.checks.push_back(check_op_n2(r, config, pf));
  }
  {
    Rng r = root.split(3);
    report.checks.push_back(check_op_n3(r, config, pf));
  }
  {
    Rng r = root.split(4);
    report.checks.push_back(check_op_n5a(r, config, pf));
  }
  {
    Rng r = root.split(5);
    report.checks.push_back(check_op_n5b(r, config, pf));
  }
  {
    Rng r = root.split(6);
    report.checks.push_back(check_op_n6(r, config, pf));
  }
  {
    Rng r = root.split(7);
    report.checks.push_back(check_op_n7(r, config, pf));
  }
  return report;
}

}  // namespace kappa
