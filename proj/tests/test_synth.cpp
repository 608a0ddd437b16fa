#include "umbilic/synth.hpp"

#include "umbilic/detect.hpp"

#include <doctest.h>

using namespace umbilic;

TEST_CASE("constant-torsion curvature law") {
  CHECK(constant_torsion_curvature(1.0, 1.0, 0.0, M_PI / 2.0) == doctest::Approx(1.0));
  CHECK(constant_torsion_curvature(-2.0, 1.0, 0.0, M_PI / 6.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(constant_torsion_curvature(1.0, 1.0, 0.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(constant_torsion_curvature(0.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("horosphere synthesis satisfies both constraints exactly") {
  const auto curve =
      synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.2 * M_PI, 0.8 * M_PI, 1e-3);
  Vec a(4);
  a << 0, 0, 1, -1;  // <p,a> = 1 on the synthesis horosphere x3 + x4 = 1
  for (int i = 0; i < curve.size(); ++i) {
    CHECK(std::abs(inner(curve.p[i], curve.p[i], -1) + 1.0) < 1e-12);
    CHECK(std::abs(inner(curve.p[i], a, -1) - 1.0) < 1e-12);
  }
  // Unit speed to integration accuracy.
  for (int i = 1; i + 1 < curve.size(); i += 50) {
    const Vec v = (curve.p[i + 1] - curve.p[i - 1]) / (2.0 * curve.ds);
    CHECK(inner(v, v, -1) == doctest::Approx(1.0).epsilon(1e-5));
  }
  CHECK_THROWS_AS(synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.0, M_PI, 1e-3),
                  std::domain_error);
}

TEST_CASE("horosphere mirror branch is a genuinely different curve") {
  const auto a =
      synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.3 * M_PI, 0.7 * M_PI, 1e-3);
  const auto b = synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.3 * M_PI, 0.7 * M_PI,
                                       1e-3, true);
  REQUIRE(a.size() == b.size());
  double diff = 0.0;
  for (int i = 0; i < a.size(); ++i) diff = std::max(diff, (a.p[i] - b.p[i]).norm());
  CHECK(diff > 1e-3);
  // Both have the same curvature profile.
  const auto fa = frenet_apparatus(a), fb = frenet_apparatus(b);
  for (int k = 0; k < fa.size(); k += 100)
    CHECK(fa.kappa[k] == doctest::Approx(fb.kappa[k]).epsilon(1e-6));
}

TEST_CASE("S^3 sphere synthesis stays on the sphere with small drift") {
  SynthStats stats;
  const auto curve = synthesize_geodesic_sphere_s3(
      1.0, M_PI / 4.0, 0.0, 0.0, 1.0 / std::sqrt(3.0), 1.0, 0.2 * M_PI, 0.8 * M_PI,
      1e-3, 0.5, 1.0, &stats);
  CHECK(stats.max_constraint_drift < 1e-6);
  for (int i = 0; i < curve.size(); ++i) {
    CHECK(std::abs(inner(curve.p[i], curve.p[i], 1) - 1.0) < 1e-12);
    CHECK(curve.p[i][3] == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(
      synthesize_geodesic_sphere_s3(1.0, M_PI / 4.0, 0.0, 0.0, 1.0, 1.0, 0.2 * M_PI,
                                    0.8 * M_PI, 1e-3),
      std::invalid_argument);  // initial conditions off the constraint
}

TEST_CASE("general umbilical synthesis: membership, unit speed, invariant") {
  for (const double sigma : {1.2, 2.0}) {
    const auto S = classify_surface((Vec(4) << 1, 0, 0, 0).finished(), sigma, -1);
    const auto curve =
        synthesize_umbilical(S, 1.0, M_PI / 2.0, 0.2 * M_PI, 0.8 * M_PI, 1e-3);
    for (int i = 0; i < curve.size(); i += 25) {
      CHECK(std::abs(membership_residual(S, curve.p[i])) < 1e-9);
      CHECK(std::abs(inner(curve.p[i], curve.p[i], -1) + 1.0) < 1e-12);
    }
    const auto rep = detect(curve);
    CHECK(rep.verdict == Verdict::UmbilicalNonGeodesic);
    CHECK(rep.C_estimate == doctest::Approx(1.0 / (S.H * S.H)).epsilon(1e-3));
  }
  const auto geo = classify_surface((Vec(4) << 1, 0, 0, 0).finished(), 0.0, -1);
  CHECK_THROWS_AS(synthesize_umbilical(geo, 1.0, M_PI / 2.0, 0.5, 2.5, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("constant geodesic curvature oracle lies on its surface") {
  const auto curve = oracle_equidistant_h3(1.5, 1.0, 0.7, 2.0, 1e-3);
  const auto S = classify_surface((Vec(4) << 1, 0, 0, 0).finished(), 1.5, -1);
  for (int i = 0; i < curve.size(); i += 50)
    CHECK(std::abs(membership_residual(S, curve.p[i])) < 1e-10);
  // Constant kappa_g on an umbilical surface gives constant kappa, tau = 0.
  const auto f = frenet_apparatus(curve);
  const double kappa_exact = std::sqrt(0.7 * 0.7 + S.H * S.H);
  for (int k = 0; k < f.size(); k += 50) {
    CHECK(f.kappa[k] == doctest::Approx(kappa_exact).epsilon(1e-6));
    CHECK(std::abs(f.tau[k]) < 1e-5);
  }
}

TEST_CASE("arclength reparametrization recovers uniform geodesic spacing") {
  std::vector<Vec> pts;
  for (int i = 0; i < 200; ++i) {
    const double t = i * i * 1e-5 + i * 5e-3;  // deliberately non-uniform
    pts.push_back(from_upper_halfspace(std::cos(t), std::sin(t), 1.0));
  }
  const auto curve = arclength_reparametrize(pts, -1, 1e-3);
  for (int i = 1; i < curve.size(); ++i) {
    const double d = std::acosh(
        std::max(1.0, -inner(curve.p[i - 1], curve.p[i], -1)));
    CHECK(d == doctest::Approx(1e-3).epsilon(1e-4));
  }
  CHECK_THROWS_AS(arclength_reparametrize({pts[0], pts[0], pts[1], pts[2]}, -1, 1e-3),
                  std::invalid_argument);
}
