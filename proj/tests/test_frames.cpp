#include "umbilic/frames.hpp"

#include "umbilic/synth.hpp"

#include <doctest.h>

using namespace umbilic;

TEST_CASE("circle in S^3: constant kappa, zero tau") {
  const double r = std::sqrt(3.0) / 2.0;
  const auto curve = oracle_circle_s3(r, 2.0, 1e-3);
  const auto f = frenet_apparatus(curve);
  const double kappa_exact = std::sqrt(1.0 - r * r) / r;
  for (int k = 0; k < f.size(); ++k) {
    CHECK(f.kappa[k] == doctest::Approx(kappa_exact).epsilon(1e-6));
    CHECK(std::abs(f.tau[k]) < 1e-6);
    CHECK(std::abs(f.kappa_prime[k]) < 1e-4);
  }
}

TEST_CASE("horosphere fixture: kappa = 1/sin(s), tau = 1") {
  const auto curve =
      synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.2 * M_PI, 0.8 * M_PI, 1e-3);
  const auto f = frenet_apparatus(curve);
  for (int k = 0; k < f.size(); ++k) {
    if (f.low_confidence[k]) continue;
    CHECK(f.kappa[k] == doctest::Approx(1.0 / std::sin(f.s[k])).epsilon(1e-4));
    CHECK(f.tau[k] == doctest::Approx(1.0).epsilon(1e-4));
    const double kp_exact =
        -std::cos(f.s[k]) / (std::sin(f.s[k]) * std::sin(f.s[k]));
    CHECK(f.kappa_prime[k] == doctest::Approx(kp_exact).epsilon(1e-3));
  }
}

TEST_CASE("frame orthonormality in the signature metric") {
  const auto curve =
      synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.2 * M_PI, 0.8 * M_PI, 1e-3);
  const auto f = frenet_apparatus(curve);
  for (int k = 0; k < f.size(); k += 37) {
    const Vec& a = curve.p[f.first + k];
    CHECK(inner(f.T[k], f.T[k], -1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(inner(f.N[k], f.N[k], -1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(inner(f.B[k], f.B[k], -1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(inner(f.T[k], a, -1)) < 1e-8);
    CHECK(std::abs(inner(f.N[k], a, -1)) < 1e-7);
    CHECK(std::abs(inner(f.B[k], a, -1)) < 1e-7);
    CHECK(std::abs(inner(f.T[k], f.N[k], -1)) < 1e-8);
    CHECK(std::abs(inner(f.T[k], f.B[k], -1)) < 1e-8);
    CHECK(std::abs(inner(f.N[k], f.B[k], -1)) < 1e-8);
  }
}

TEST_CASE("geodesic raises a kappa-threshold error naming the location") {
  SampledCurve geo;
  geo.c = 1;
  geo.dim = 4;
  geo.ds = 1e-3;
  for (int i = 0; i < 200; ++i) {
    const double s = i * 1e-3;
    Vec p(4);
    p << std::cos(s), std::sin(s), 0.0, 0.0;  // great circle, kappa = 0
    geo.s.push_back(s);
    geo.p.push_back(std::move(p));
  }
  CHECK_THROWS_AS(frenet_apparatus(geo), std::domain_error);
}

TEST_CASE("RM frame stays orthonormal and reproduces kappa") {
  const auto curve =
      synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.2 * M_PI, 0.8 * M_PI, 1e-3);
  const auto rm = rm_apparatus(curve);
  REQUIRE(rm.size() > 0);
  CHECK(rm.kappas[0].size() == 2);
  const auto f = frenet_apparatus(curve);
  for (int k = 0; k < rm.size(); k += 41) {
    for (size_t i = 0; i < rm.N[k].size(); ++i) {
      CHECK(inner(rm.N[k][i], rm.N[k][i], -1) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(inner(rm.N[k][i], rm.T[k], -1)) < 1e-10);
      for (size_t j = i + 1; j < rm.N[k].size(); ++j)
        CHECK(std::abs(inner(rm.N[k][i], rm.N[k][j], -1)) < 1e-10);
    }
    // kappa^2 = sum kappa_i^2.
    double sum = 0.0;
    for (double ki : rm.kappas[k]) sum += ki * ki;
    CHECK(std::sqrt(sum) == doctest::Approx(f.kappa[k]).epsilon(1e-5));
  }
}

TEST_CASE("RM transport has no spurious rotation on a planar-normal curve") {
  // On the S^3 circle the normal bundle is flat; the RM curvatures must be
  // constant (no oscillation at the circle frequency).
  const auto curve = oracle_circle_s3(std::sqrt(3.0) / 2.0, 2.0, 1e-3);
  const auto rm = rm_apparatus(curve);
  for (int k = 0; k < rm.size(); ++k)
    for (size_t i = 0; i < rm.kappas[k].size(); ++i)
      CHECK(rm.kappas[k][i] == doctest::Approx(rm.kappas[0][i]).epsilon(1e-4));
}

TEST_CASE("rm_apparatus validates a custom initial frame") {
  const auto curve = oracle_circle_s3(0.8, 1.0, 1e-3);
  CHECK_THROWS_AS(rm_apparatus(curve, std::vector<Vec>{Vec::Zero(4)}),
                  std::invalid_argument);
}
