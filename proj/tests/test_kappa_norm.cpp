#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "kappa/closed_set.hpp"
#include "kappa/kappa_norm.hpp"
#include "support/oracles.hpp"

using namespace kappa;

namespace {

ClosedSet unit_box() {
  return ClosedSet::polytope({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

std::vector<Vector> random_polygon(Rng& rng, int max_pts = 7) {
  const int count = 3 + static_cast<int>(rng.uniform_int(0, max_pts - 3));
  std::vector<Vector> pts;
  for (int i = 0; i < count; ++i) pts.push_back(rng.box(2, -2.0, 2.0));
  auto hull = convex_hull_2d(pts);
  return hull;
}

}  // namespace

TEST_SUITE("kappa-norm") {

TEST_CASE("rho on balls, subspaces, and polytopes") {
  CHECK(rho({2, 0}, ClosedSet::ball({0, 0}, 1)) == doctest::Approx(1.0));
  CHECK(rho({0.5, 0}, ClosedSet::ball({0, 0}, 1)) == doctest::Approx(0.0));
  CHECK(rho({3, 4}, ClosedSet::subspace({{1, 0}}, {0, 0})) ==
        doctest::Approx(4.0));
  const ClosedSet tri = ClosedSet::polytope({{0, 0}, {1, 0}, {0, 1}});
  CHECK(rho({2, 2}, tri) == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("rho under L1 and Linf balls") {
  CHECK(rho({2, 0}, ClosedSet::ball({0, 0}, 1, NormKind::L1)) ==
        doctest::Approx(1.0));
  CHECK(rho({2, 2}, ClosedSet::ball({0, 0}, 1, NormKind::LInf)) ==
        doctest::Approx(1.0));
}

TEST_CASE("rho on unions takes the min over parts; empty gives infinity") {
  const ClosedSet u = ClosedSet::union_of(
      {ClosedSet::ball({0, 0}, 1), ClosedSet::point({4, 0})});
  CHECK(rho({3.5, 0}, u) == doctest::Approx(0.5));
  CHECK(std::isinf(rho({0, 0}, ClosedSet::empty())));
}

TEST_CASE("rho to a polytope agrees with the exact elementary oracle") {
  Rng rng(915);
  for (int i = 0; i < 50; ++i) {
    const auto poly = random_polygon(rng);
    const ClosedSet c = ClosedSet::polytope(poly);
    const Vector x = rng.box(2, -3.0, 3.0);
    const double expect = oracle::dist_to_polygon(x, poly);
    CHECK(rho(x, c) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("rho min-norm point works in three dimensions") {
  const ClosedSet cube = ClosedSet::polytope({{0, 0, 0},
                                              {1, 0, 0},
                                              {0, 1, 0},
                                              {0, 0, 1},
                                              {1, 1, 0},
                                              {1, 0, 1},
                                              {0, 1, 1},
                                              {1, 1, 1}});
  CHECK(rho({2, 2, 2}, cube) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(rho({0.5, 0.5, 0.5}, cube) == doctest::Approx(0.0));
}

TEST_CASE("rho_bar on balls and boxes") {
  CHECK(rho_bar(ClosedSet::ball({0, 0}, 2), ClosedSet::ball({0, 0}, 1)) ==
        doctest::Approx(1.0));
  CHECK(rho_bar(ClosedSet::ball({0, 0}, 1), ClosedSet::ball({0, 0}, 2)) ==
        doctest::Approx(0.0));
  const ClosedSet shifted =
      ClosedSet::polytope({{1, 0}, {2, 0}, {2, 1}, {1, 1}});
  CHECK(rho_bar(unit_box(), shifted) == doctest::Approx(1.0));
}

TEST_CASE("rho_bar is exact for polytope sources and reports it") {
  const auto detail = rho_bar_detailed(unit_box(), ClosedSet::ball({0, 0}, 1));
  CHECK(detail.exact);
  CHECK(detail.value == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("rho_bar union source takes the max over parts") {
  const ClosedSet u =
      ClosedSet::union_of({unit_box(), ClosedSet::point({3, 0})});
  CHECK(rho_bar(u, unit_box()) == doctest::Approx(2.0));
}

TEST_CASE("rho_bar rejects an empty source") {
  CHECK_THROWS_AS(rho_bar(ClosedSet::empty(), unit_box()),
                  std::invalid_argument);
}

TEST_CASE("rho_bar agrees with the boundary-sampling grid oracle") {
  Rng rng(2718);
  for (int i = 0; i < 12; ++i) {
    const auto pa = random_polygon(rng);
    const auto pb = random_polygon(rng);
    const double impl = rho_bar(ClosedSet::polytope(pa), ClosedSet::polytope(pb));
    const double grid = oracle::rho_bar_grid(pa, pb, 1e-3);
    CHECK(std::fabs(impl - grid) <= 1e-3);
  }
}

TEST_CASE("metric_d identity, translation, and homogeneity") {
  CHECK(metric_d(unit_box(), unit_box()) == doctest::Approx(0.0));
  const ClosedSet shifted = affine_transform(1, {1, 0}, unit_box());
  CHECK(metric_d(unit_box(), shifted) == doctest::Approx(2.0).epsilon(1e-9));
  const ClosedSet a3 = affine_transform(3, {0, 0}, unit_box());
  const ClosedSet b3 = affine_transform(3, {0, 0}, shifted);
  CHECK(metric_d(a3, b3) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("metric_d satisfies the metric laws on random polytopes") {
  Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    const ClosedSet a = ClosedSet::polytope(random_polygon(rng));
    const ClosedSet b = ClosedSet::polytope(random_polygon(rng));
    const ClosedSet c = ClosedSet::polytope(random_polygon(rng));
    const double dab = metric_d(a, b);
    const double dba = metric_d(b, a);
    CHECK(std::fabs(dab - dba) <= 1e-9);
    CHECK(dab <= metric_d(a, c) + metric_d(c, b) + 1e-9);
    // Additivity law under Minkowski sums.
    const ClosedSet e = ClosedSet::polytope(random_polygon(rng));
    CHECK(metric_d(minkowski_sum_cl(a, b), minkowski_sum_cl(c, e)) <=
          metric_d(a, c) + metric_d(b, e) + 1e-9);
    // Homogeneity.
    const double lam = rng.uniform(-3.0, 3.0);
    if (std::fabs(lam) > 1e-3) {
      const ClosedSet la = affine_transform(lam, {0, 0}, a);
      const ClosedSet lb = affine_transform(lam, {0, 0}, b);
      CHECK(metric_d(la, lb) ==
            doctest::Approx(std::fabs(lam) * dab).epsilon(1e-9));
    }
  }
}

TEST_CASE("metric_d rejects empty arguments") {
  CHECK_THROWS_AS(metric_d(ClosedSet::empty(), unit_box()),
                  std::invalid_argument);
  CHECK_THROWS_AS(metric_d(unit_box(), ClosedSet::empty()),
                  std::invalid_argument);
}

TEST_CASE("quotient projection returns the complement representative") {
  const ClosedSet m = ClosedSet::subspace({{1, 0}}, {0, 0});
  const auto q = quotient_project({3, 4}, m);
  CHECK(q.representative[0] == doctest::Approx(0.0));
  CHECK(q.representative[1] == doctest::Approx(4.0));
  CHECK(q.norm == doctest::Approx(4.0));

  const auto q2 = quotient_project({2, 0}, m);
  CHECK(q2.norm == doctest::Approx(0.0));

  // M = {0}: empty basis leaves x unchanged.
  const ClosedSet origin = ClosedSet::subspace({}, {0, 0});
  const auto q3 = quotient_project({3, 4}, origin);
  CHECK(q3.representative[0] == doctest::Approx(3.0));
  CHECK(q3.norm == doctest::Approx(5.0));

  CHECK_THROWS_AS(quotient_project({1, 1}, ClosedSet::subspace({{1, 0}}, {0, 1})),
                  std::invalid_argument);
}

TEST_CASE("quotient norm equals rho to the subspace") {
  Rng rng(5150);
  for (int i = 0; i < 20; ++i) {
    Vector b = rng.unit_vector(2);
    const ClosedSet m = ClosedSet::subspace({b}, {0, 0});
    const Vector x = rng.box(2, -2.0, 2.0);
    const auto q = quotient_project(x, m);
    CHECK(std::fabs(q.norm - rho(x, m)) <= 1e-12);
  }
}

TEST_CASE("extension to the singleton kappa-norm") {
  const double v = extend_to_singleton({3, 4}, 1000);
  CHECK(v >= 4.999);
  CHECK(v <= 5.0);
  CHECK(extend_to_singleton({0, 0}, 5) == doctest::Approx(0.0));
  CHECK(extend_to_singleton({1, 0}, 10) == doctest::Approx(0.9));
  CHECK_THROWS_AS(extend_to_singleton({1, 0}, 0), std::invalid_argument);
}

TEST_CASE("seminorm_sup over subspace families") {
  SeminormFamily f;
  f.members.push_back(ClosedSet::subspace({{0, 1}}, {0, 0}));  // p = |x1|
  f.members.push_back(ClosedSet::subspace({{1, 0}}, {0, 0}));  // p = |x2|
  CHECK(seminorm_sup(f, {3, -4}) == doctest::Approx(4.0));
  CHECK(seminorm_sup(SeminormFamily{}, {7, 7}) == doctest::Approx(0.0));
  SeminormFamily single;
  single.members.push_back(ClosedSet::subspace({{1, 0}}, {0, 0}));
  CHECK(seminorm_sup(single, {3, 4}) ==
        doctest::Approx(rho({3, 4}, single.members[0])));
}

TEST_CASE("seminorm_sup satisfies the seminorm axioms") {
  Rng rng(31);
  SeminormFamily f;
  f.members.push_back(ClosedSet::subspace({rng.unit_vector(2)}, {0, 0}));
  f.members.push_back(ClosedSet::subspace({rng.unit_vector(2)}, {0, 0}));
  for (int i = 0; i < 20; ++i) {
    const Vector x = rng.box(2, -2.0, 2.0);
    const Vector y = rng.box(2, -2.0, 2.0);
    const double lam = rng.uniform(-2.0, 2.0);
    CHECK(seminorm_sup(f, add(x, y)) <=
          seminorm_sup(f, x) + seminorm_sup(f, y) + 1e-12);
    CHECK(seminorm_sup(f, scale(lam, x)) ==
          doctest::Approx(std::fabs(lam) * seminorm_sup(f, x)).epsilon(1e-12));
  }
}

TEST_CASE("perturbation bound dilates by eps/2") {
  const auto box = perturb_bound(unit_box(), 0.2);
  CHECK(box.d < 0.2);
  CHECK(box.d == doctest::Approx(0.1).epsilon(1e-9));
  const auto* sigma = box.c_sigma.as<Ball>();
  REQUIRE(sigma != nullptr);
  CHECK(sigma->radius == doctest::Approx(0.1));

  const auto ball = perturb_bound(ClosedSet::ball({0, 0}, 1), 0.2);
  CHECK(ball.d == doctest::Approx(0.1));

  // The original set is contained in the dilation.
  const ClosedSet sum = minkowski_sum_cl(unit_box(), box.c_sigma);
  CHECK(rho_bar(unit_box(), sum) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(perturb_bound(unit_box(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(perturb_bound(unit_box(), -1.0), std::invalid_argument);
}

TEST_CASE("perturbation bound cross-checked by the grid oracle") {
  Rng rng(1234);
  const auto poly = random_polygon(rng);
  const ClosedSet c = ClosedSet::polytope(poly);
  const auto result = perturb_bound(c, 0.2);
  const ClosedSet sum = minkowski_sum_cl(c, result.c_sigma);
  const auto* sum_poly = sum.as<Polytope>();
  REQUIRE(sum_poly != nullptr);
  const double grid = oracle::metric_d_grid(sum_poly->vertices, poly, 1e-3);
  CHECK(std::fabs(grid - 0.1) <= 1e-3);
  CHECK(std::fabs(result.d - grid) <= 1e-3);
}

TEST_CASE("x maps convexly onto rho(x, C) for convex C") {
  Rng rng(4242);
  const ClosedSet c = ClosedSet::polytope(random_polygon(rng));
  for (int i = 0; i < 30; ++i) {
    const Vector x = rng.box(2, -3.0, 3.0);
    const Vector y = rng.box(2, -3.0, 3.0);
    const Vector mid = scale(0.5, add(x, y));
    CHECK(rho(mid, c) <= 0.5 * rho(x, c) + 0.5 * rho(y, c) + 1e-12);
  }
}

}  // TEST_SUITE
