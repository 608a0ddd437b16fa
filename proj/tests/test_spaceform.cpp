#include "umbilic/spaceform.hpp"

#include <doctest.h>

using namespace umbilic;

namespace {
Vec v4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}
}  // namespace

TEST_CASE("inner product switches signature with c") {
  const Vec u = v4(1.0, 2.0, 3.0, 4.0), w = v4(5.0, 6.0, 7.0, 8.0);
  CHECK(inner(u, w, 0) == doctest::Approx(70.0));
  CHECK(inner(u, w, 1) == doctest::Approx(70.0));
  CHECK(inner(u, w, -1) == doctest::Approx(70.0 - 2.0 * 32.0));
  CHECK_THROWS_AS(inner(u, Vec::Zero(3), -1), std::invalid_argument);
}

TEST_CASE("hyperquadric projection and membership") {
  const Vec p = project_to_hyperquadric(v4(0.3, -0.2, 0.1, 2.0), -1);
  CHECK(inner(p, p, -1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(on_hyperquadric(p, -1));
  CHECK_THROWS_AS(project_to_hyperquadric(v4(2.0, 0.0, 0.0, 1.0), -1),
                  std::domain_error);
  CHECK_THROWS_AS(project_to_hyperquadric(v4(0.0, 0.0, 0.0, -1.0), -1),
                  std::domain_error);
  CHECK(on_hyperquadric(v4(0.6, 0.0, 0.8, 0.0), 1));
}

TEST_CASE("classification over the H^3 families") {
  SUBCASE("equidistant") {
    const auto S = classify_surface(v4(1, 0, 0, 0), 1.5, -1);
    CHECK(S.kind == SurfaceKind::EquidistantSurface);
    CHECK(S.epsilon == 1.0);
    CHECK(S.H == doctest::Approx(1.5 / std::sqrt(1.0 + 2.25)));
    CHECK(S.K_ext == doctest::Approx(S.H * S.H));
    CHECK(S.K == doctest::Approx(S.K_ext - 1.0));
  }
  SUBCASE("totally geodesic plane") {
    const auto S = classify_surface(v4(3, 0, 0, 0), 0.0, -1);
    CHECK(S.kind == SurfaceKind::TotallyGeodesicPlane);
    CHECK(S.H == 0.0);
  }
  SUBCASE("horosphere normalizes to sigma = -1") {
    const auto S = classify_surface(v4(0, 0, 1, -1), 1.0, -1);
    CHECK(S.kind == SurfaceKind::Horosphere);
    CHECK(S.sigma == -1.0);
    CHECK(S.epsilon == 0.0);
    CHECK(S.H == doctest::Approx(-1.0));
    CHECK(S.K == doctest::Approx(0.0));
    CHECK(inner(S.a, S.a, -1) == doctest::Approx(0.0));
  }
  SUBCASE("geodesic sphere needs |sigma| > 1 for timelike a") {
    const auto S = classify_surface(v4(0, 0, 0, -2), 2.0 * 2.0, -1);
    CHECK(S.kind == SurfaceKind::GeodesicSphereH3);
    CHECK(S.sigma == doctest::Approx(2.0));
    CHECK(std::abs(S.H) == doctest::Approx(2.0 / std::sqrt(3.0)));
    CHECK_THROWS_AS(classify_surface(v4(0, 0, 0, 1), 0.5, -1), std::invalid_argument);
  }
}

TEST_CASE("classification over the S^3 families") {
  const auto S = classify_surface(v4(0, 0, 0, 1), 0.5, 1);
  CHECK(S.kind == SurfaceKind::GeodesicSphereS3);
  CHECK(S.H == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(S.K == doctest::Approx(1.0 / (1.0 - 0.25)));

  const auto G = classify_surface(v4(0, 0, 0, 2), 0.0, 1);
  CHECK(G.kind == SurfaceKind::TotallyGeodesicSphere);
  CHECK(G.a[3] == doctest::Approx(1.0));

  CHECK_THROWS_AS(classify_surface(v4(0, 0, 0, 1), 1.5, 1), std::invalid_argument);
}

TEST_CASE("surface normal is unit and tangent") {
  SUBCASE("H^3 horosphere") {
    const auto S = classify_surface(v4(0, 0, -1, 1), -1.0, -1);
    const Vec p = v4(0, 0, 0, 1);
    CHECK(membership_residual(S, p) == doctest::Approx(0.0));
    const Vec xi = surface_normal(S, p);
    CHECK(inner(xi, xi, -1) == doctest::Approx(1.0));
    CHECK(inner(xi, p, -1) == doctest::Approx(0.0));
  }
  SUBCASE("S^3 geodesic sphere sigma = 1/2") {
    const auto S = classify_surface(v4(0, 0, 0, 1), 0.5, 1);
    const Vec p = v4(std::sqrt(3.0) / 2.0, 0, 0, 0.5);
    const Vec xi = surface_normal(S, p);
    CHECK(inner(xi, xi, 1) == doctest::Approx(1.0));
    CHECK(inner(xi, p, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(xi[3] == doctest::Approx((1.0 - 0.25) / std::sqrt(0.75)));
  }
  SUBCASE("off-surface point rejected") {
    const auto S = classify_surface(v4(1, 0, 0, 0), 1.5, -1);
    CHECK_THROWS_AS(surface_normal(S, v4(0, 0, 0, 1)), std::domain_error);
  }
}

TEST_CASE("upper half-space chart round trip") {
  const Vec p = from_upper_halfspace(1.0, 0.0, 1.0);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));
  CHECK(p[2] == doctest::Approx(-0.5));
  CHECK(p[3] == doctest::Approx(1.5));
  CHECK(inner(p, p, -1) == doctest::Approx(-1.0));

  const auto h = to_upper_halfspace(p);
  CHECK(h.x == doctest::Approx(1.0));
  CHECK(h.y == doctest::Approx(0.0));
  CHECK(h.z == doctest::Approx(1.0));

  for (double x : {-0.7, 0.0, 2.0})
    for (double z : {0.1, 1.0, 5.0}) {
      const Vec q = from_upper_halfspace(x, 0.3, z);
      CHECK(on_hyperquadric(q, -1, 1e-12));
      const auto hh = to_upper_halfspace(q);
      CHECK(hh.x == doctest::Approx(x).epsilon(1e-12));
      CHECK(hh.y == doctest::Approx(0.3).epsilon(1e-12));
      CHECK(hh.z == doctest::Approx(z).epsilon(1e-12));
    }
  CHECK_THROWS_AS(from_upper_halfspace(0, 0, -1.0), std::invalid_argument);
}

TEST_CASE("random isometries preserve the metric and the upper sheet") {
  for (int c : {-1, 1}) {
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
      const Mat M = random_isometry(c, seed);
      for (int trial = 0; trial < 5; ++trial) {
        const Vec u = Vec::Random(4), w = Vec::Random(4);
        CHECK(inner(M * u, M * w, c) == doctest::Approx(inner(u, w, c)).epsilon(1e-10));
      }
      if (c == -1) {
        const Vec p = project_to_hyperquadric(v4(0.3, 0.1, -0.2, 1.5), -1);
        CHECK(on_hyperquadric(M * p, -1, 1e-9));
      }
    }
  }
  CHECK(random_isometry(-1, 0).isIdentity());
  CHECK(random_isometry(-1, 9) == random_isometry(-1, 9));
}
