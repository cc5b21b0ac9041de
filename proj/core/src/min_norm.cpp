#include "detail/min_norm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kappa::detail {

namespace {

// Affine minimizer over the points indexed by S: minimize ||sum a_i p_i||
// subject to sum a_i = 1. KKT system [G 1; 1^T 0][a; mu] = [0; 1].
bool affine_minimizer(const std::vector<Vector>& p, const std::vector<int>& S,
                      std::vector<double>& alpha) {
  const int k = static_cast<int>(S.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      double g = dot(p[S[i]], p[S[j]]);
      M(i, j) = g;
      M(j, i) = g;
    }
    M(i, k) = 1.0;
    M(k, i) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;

  Eigen::VectorXd sol = M.fullPivLu().solve(rhs);
  if (!sol.allFinite() || (M * sol - rhs).norm() > 1e-8 * (1.0 + M.norm())) {
    // Nearly affinely dependent corral; tiny Tikhonov jitter.
    for (int i = 0; i < k; ++i) M(i, i) += 1e-13 * (1.0 + M(i, i));
    sol = M.fullPivLu().solve(rhs);
    if (!sol.allFinite()) return false;
  }
  alpha.assign(k, 0.0);
  for (int i = 0; i < k; ++i) alpha[i] = sol(i);
  return true;
}

Vector combination(const std::vector<Vector>& p, const std::vector<int>& S,
                   const std::vector<double>& lam) {
  Vector w = zeros(p[S[0]].size());
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t c = 0; c < w.size(); ++c) w[c] += lam[i] * p[S[i]][c];
  return w;
}

}  // namespace

MinNorm min_norm_point(const std::vector<Vector>& pts, const Vector& x) {
  if (pts.empty()) throw std::invalid_argument("min_norm_point: no points");
  const std::size_t d = x.size();
  const int n = static_cast<int>(pts.size());
  std::vector<Vector> p(n);
  double scale = 1.0;
  for (int i = 0; i < n; ++i) {
    check_dim(pts[i], d, "min_norm_point");
    p[i] = sub(pts[i], x);
    scale = std::max(scale, norm2_sq(p[i]));
  }

  int start = 0;
  for (int i = 1; i < n; ++i)
    if (norm2_sq(p[i]) < norm2_sq(p[start])) start = i;

  std::vector<int> S{start};
  std::vector<double> lam{1.0};
  Vector w = p[start];

  const double eps_term = 1e-13 * scale;
  const double eps_drop = 1e-12;
  const int max_major = 64 + 8 * n;

  for (int major = 0; major < max_major; ++major) {
    double wsq = norm2_sq(w);
    if (wsq <= eps_term) {
      w = zeros(d);
      break;
    }
    int jbest = -1;
    double best = kInf;
    for (int j = 0; j < n; ++j) {
      double v = dot(w, p[j]);
      if (v < best) {
        best = v;
        jbest = j;
      }
    }
    if (best >= wsq - eps_term) break;
    if (std::find(S.begin(), S.end(), jbest) != S.end()) break;  // stall guard

    S.push_back(jbest);
    lam.push_back(0.0);

    // Minor cycle: restore a corral (all-positive affine minimizer).
    for (int minor = 0; minor < 2 * n + 16; ++minor) {
      std::vector<double> alpha;
      if (!affine_minimizer(p, S, alpha)) break;
      double amin = *std::min_element(alpha.begin(), alpha.end());
      if (amin > eps_drop) {
        lam = alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (alpha[i] <= eps_drop && lam[i] - alpha[i] > 1e-300) {
          theta = std::min(theta, lam[i] / (lam[i] - alpha[i]));
        }
      }
      theta = std::clamp(theta, 0.0, 1.0);
      std::vector<double> blend(S.size());
      std::size_t drop = 0;
      for (std::size_t i = 0; i < S.size(); ++i) {
        blend[i] = (1.0 - theta) * lam[i] + theta * alpha[i];
        if (blend[i] < blend[drop]) drop = i;
      }
      std::vector<int> S2;
      std::vector<double> lam2;
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (i == drop || blend[i] <= eps_drop) continue;  // drop at least one
        S2.push_back(S[i]);
        lam2.push_back(blend[i]);
      }
      if (S2.empty()) {
        S2.push_back(S[drop]);
        lam2.push_back(1.0);
      }
      double tot = 0.0;
      for (double v : lam2) tot += v;
      for (double& v : lam2) v /= tot;
      bool stuck = S2.size() == S.size();
      S = std::move(S2);
      lam = std::move(lam2);
      if (stuck) break;
    }
    w = combination(p, S, lam);
  }

  MinNorm out;
  out.distance = norm2(w);
  out.nearest = add(w, x);
  return out;
}

double dist_to_hull(const Vector& x, const std::vector<Vector>& pts) {
  return min_norm_point(pts, x).distance;
}

}  // namespace kappa::detail
