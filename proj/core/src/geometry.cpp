#include "kappa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kappa {

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::LInf: return "linf";
  }
  throw std::logic_error("unknown NormKind");
}

NormKind norm_kind_from_string(const std::string& s) {
  if (s == "l1") return NormKind::L1;
  if (s == "l2") return NormKind::L2;
  if (s == "linf") return NormKind::LInf;
  throw std::invalid_argument("unknown norm kind: " + s);
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2_sq(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double norm2(const Vector& v) { return std::sqrt(norm2_sq(v)); }

double norm(const Vector& v, NormKind k) {
  switch (k) {
    case NormKind::L2: return norm2(v);
    case NormKind::L1: {
      double s = 0.0;
      for (double x : v) s += std::fabs(x);
      return s;
    }
    case NormKind::LInf: {
      double s = 0.0;
      for (double x : v) s = std::max(s, std::fabs(x));
      return s;
    }
  }
  throw std::logic_error("unknown NormKind");
}

double dist2(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dist2: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scale(double s, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Vector zeros(std::size_t d) { return Vector(d, 0.0); }

Vector unit(std::size_t d, std::size_t axis) {
  if (axis >= d) throw std::invalid_argument("unit: axis out of range");
  Vector r(d, 0.0);
  r[axis] = 1.0;
  return r;
}

void check_dim(const Vector& v, std::size_t d, const char* what) {
  if (v.size() != d) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(d) + ", got " + std::to_string(v.size()));
  }
}

// splitmix64: tiny, well-studied, and stable across platforms.
Rng::Rng(std::uint64_t seed) : s_(seed) {}

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

Vector Rng::box(std::size_t d, double a, double b) {
  Vector r(d);
  for (auto& x : r) x = uniform(a, b);
  return r;
}

Vector Rng::unit_vector(std::size_t d) {
  // Box-Muller pairs, normalized; retry on the (measure-zero) null draw.
  for (;;) {
    Vector v(d);
    for (std::size_t i = 0; i < d; i += 2) {
      double u1 = std::max(uniform(), 1e-300);
      double u2 = uniform();
      double r = std::sqrt(-2.0 * std::log(u1));
      v[i] = r * std::cos(6.283185307179586 * u2);
      if (i + 1 < d) v[i + 1] = r * std::sin(6.283185307179586 * u2);
    }
    double n = norm2(v);
    if (n > 1e-30) return scale(1.0 / n, v);
  }
}

Rng Rng::split(std::uint64_t stream) {
  Rng child(s_ ^ (0xa0761d6478bd642fULL * (stream + 1)));
  child.next_u64();
  return child;
}

}  // namespace kappa

namespace kappa {

Vector orthogonal_component(const Vector& x, const std::vector<Vector>& basis) {
  Vector r = x;
  for (const auto& b : basis) {
    double c = dot(r, b);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
  }
  return r;
}

}  // namespace kappa
