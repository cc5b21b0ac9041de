#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace kappa {

// Points of the ambient space R^d. Dimension is carried by size().
using Vector = std::vector<double>;

// Values of a kappa-norm. +infinity is a legal value: it encodes the
// distance to the empty set (axiom N8).
using KappaValue = double;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class NormKind { L1, L2, LInf };

std::string to_string(NormKind k);
NormKind norm_kind_from_string(const std::string& s);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm2_sq(const Vector& v);
double norm(const Vector& v, NormKind k);
double dist2(const Vector& a, const Vector& b);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(double s, const Vector& v);
Vector zeros(std::size_t d);
Vector unit(std::size_t d, std::size_t axis);

// Throws std::invalid_argument when v.size() != d.
void check_dim(const Vector& v, std::size_t d, const char* what);

// Component of x orthogonal to span(basis); basis must be orthonormal.
Vector orthogonal_component(const Vector& x, const std::vector<Vector>& basis);

// Deterministic uniform sampling, independent of the standard library's
// distribution implementations so that seeded runs are reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();                     // [0,1)
  double uniform(double a, double b);   // [a,b)
  int uniform_int(int lo, int hi);      // inclusive
  Vector box(std::size_t d, double a, double b);
  Vector unit_vector(std::size_t d);    // uniform direction, Euclidean
  Rng split(std::uint64_t stream);      // derived independent stream

 private:
  std::uint64_t s_;
};

}  // namespace kappa
