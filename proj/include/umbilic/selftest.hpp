#pragma once

// The acceptance suite: end-to-end synthesize/analyze/detect round trips at
// pinned tolerances. Used by the acceptance test binary and by the CLI
// selftest subcommand.

#include "umbilic/detect.hpp"
#include "umbilic/synth.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

namespace umbilic::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

namespace detail {

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (!detail_.empty()) detail_ += "; ";
      detail_ += "FAILED " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail_.empty()) detail_ += "; ";
    detail_ += what;
  }
  bool pass() const { return pass_; }
  const std::string& detail() const { return detail_; }

 private:
  bool pass_ = true;
  std::string detail_;
};

inline std::string num(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Max relative kappa error and max |tau - tau_expected| against the
// constant-torsion curvature law, over the high-confidence window.
struct RecoveryError {
  double kappa_rel = 0.0;
  double tau_abs = 0.0;
};

inline RecoveryError recovery_error(const FrenetData& f, double H, double tau,
                                    double phase = 0.0) {
  RecoveryError e;
  for (int k = 0; k < f.size(); ++k) {
    if (f.low_confidence[k]) continue;
    const double kexp = constant_torsion_curvature(H, tau, phase, f.s[k]);
    e.kappa_rel = std::max(e.kappa_rel, std::abs(f.kappa[k] - kexp) / kexp);
    e.tau_abs = std::max(e.tau_abs, std::abs(std::abs(f.tau[k]) - std::abs(tau)));
  }
  return e;
}

// Deterministic generator curve on the geodesic hypersphere x5 = sigma of
// S^4 (on_sphere = true) or a generic S^4 curve (negative control).
inline SampledCurve s4_test_curve(bool on_sphere, double ds = 1e-3) {
  const double sigma = 0.5;
  const double R = std::sqrt(1.0 - sigma * sigma);
  std::vector<Vec> pts;
  const int m = 8000;
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * i / (m - 1);
    Eigen::Vector4d w(std::cos(t), std::sin(t) + 0.3 * std::cos(2.0 * t),
                      0.5 * std::sin(3.0 * t), 1.0 + 0.2 * std::sin(t));
    Vec p(5);
    if (on_sphere) {
      p << R * w / w.norm(), sigma;
    } else {
      p << w, 1.0 + 0.3 * std::sin(2.0 * t);
      p.normalize();
    }
    pts.push_back(std::move(p));
  }
  return arclength_reparametrize(std::move(pts), 1, ds);
}

}  // namespace detail

inline CriterionResult criterion1(double ds) {
  detail::Check c;
  const auto curve = synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.15 * M_PI,
                                           0.85 * M_PI, ds);
  const auto f = frenet_apparatus(curve);
  const auto e = detail::recovery_error(f, 1.0, 1.0);
  c.require(e.kappa_rel < 1e-3, "kappa rel err " + detail::num(e.kappa_rel) + " < 1e-3");
  double tau_err = 0.0;
  for (int k = 0; k < f.size(); ++k)
    if (!f.low_confidence[k]) tau_err = std::max(tau_err, std::abs(f.tau[k] - 1.0));
  c.require(tau_err < 1e-3, "tau err " + detail::num(tau_err) + " < 1e-3");

  const auto rep = detect(curve);
  c.require(rep.verdict == Verdict::UmbilicalNonGeodesic, "verdict umbilical");
  c.require(rep.recovered_surface &&
                rep.recovered_surface->kind == SurfaceKind::Horosphere,
            "kind Horosphere");
  c.require(std::abs(rep.C_estimate - 1.0) < 2e-3,
            "|C-1| " + detail::num(std::abs(rep.C_estimate - 1.0)) + " < 2e-3");

  const Vec b = recover_beta_vector(curve, f);
  double dot_err = 0.0;
  for (const auto& p : curve.p)
    dot_err = std::max(dot_err, std::abs(inner(p, b, -1) + 1.0));
  c.require(dot_err < 1e-5, "<alpha,b>=-1 err " + detail::num(dot_err) + " < 1e-5");
  const double bb = std::abs(inner(b, b, -1));
  c.require(bb < 1e-5, "|<b,b>| " + detail::num(bb) + " < 1e-5");
  c.note("C=" + detail::num(rep.C_estimate));
  return {1, "horosphere round trip", c.pass(), 0.0, c.detail()};
}

inline CriterionResult criterion2(double ds) {
  detail::Check c;
  for (const double tau : {1.0, 2.0}) {
    const double L = M_PI / tau;
    SynthStats stats;
    const auto curve = synthesize_geodesic_sphere_s3(
        tau, M_PI / 4.0, 0.0, 0.0, 1.0 / std::sqrt(3.0), 1.0, 0.15 * L, 0.85 * L, ds,
        0.5, 1.0, &stats);
    c.require(stats.max_constraint_drift < 1e-6,
              "tau=" + detail::num(tau) + " constraint drift " +
                  detail::num(stats.max_constraint_drift) + " < 1e-6");
    const auto rep = detect(curve);
    c.require(rep.verdict == Verdict::UmbilicalNonGeodesic,
              "tau=" + detail::num(tau) + " verdict umbilical");
    c.require(std::abs(rep.C_estimate - 3.0) < 0.03,
              "tau=" + detail::num(tau) + " C " + detail::num(rep.C_estimate) +
                  " = 3.00 +- 1%");
    c.require(rep.recovered_surface &&
                  std::abs(std::abs(rep.recovered_surface->sigma) - 0.5) < 0.005,
              "tau=" + detail::num(tau) + " sigma 0.500 +- 0.005");
  }
  return {2, "S^3 sphere round trip", c.pass(), 0.0, c.detail()};
}

inline CriterionResult criterion3(double ds) {
  detail::Check c;
  struct Case {
    double sigma, epsilon;
    SurfaceKind kind;
  };
  const std::vector<Case> grid = {
      {1.2, 1.0, SurfaceKind::EquidistantSurface},
      {1.5, 1.0, SurfaceKind::EquidistantSurface},
      {2.0, 1.0, SurfaceKind::EquidistantSurface},
      {-1.0, 0.0, SurfaceKind::Horosphere},
      {1.5, -1.0, SurfaceKind::GeodesicSphereH3},
      {2.0, -1.0, SurfaceKind::GeodesicSphereH3},
  };
  for (const auto& g : grid) {
    Vec a = Vec::Zero(4);
    if (g.epsilon > 0.0)
      a[0] = 1.0;
    else if (g.epsilon == 0.0) {
      a[2] = -1.0;
      a[3] = 1.0;
    } else
      a[3] = -1.0;
    const auto S = classify_surface(a, g.sigma, -1);
    const auto curve =
        synthesize_umbilical(S, 1.0, M_PI / 2.0, 0.15 * M_PI, 0.85 * M_PI, ds);
    const auto rep = detect(curve);
    const std::string tag = "eps=" + detail::num(g.epsilon) +
                            " sigma=" + detail::num(g.sigma);
    c.require(rep.verdict == Verdict::UmbilicalNonGeodesic, tag + " verdict");
    c.require(rep.recovered_surface && rep.recovered_surface->kind == g.kind,
              tag + " kind " + to_string(g.kind));
    const double H_err = std::abs(rep.H_estimate - std::abs(S.H)) / std::abs(S.H);
    c.require(H_err < 0.01, tag + " H err " + detail::num(H_err) + " < 1%");
  }
  return {3, "H^3 classification grid", c.pass(), 0.0, c.detail()};
}

inline CriterionResult criterion4(double ds) {
  detail::Check c;
  const auto curve = detail::s4_test_curve(true, ds);
  const auto rm = rm_apparatus(curve);
  const auto rel = detect_rm_linear_relation(rm);
  c.require(rel.residual < 1e-4, "residual " + detail::num(rel.residual) + " < 1e-4");
  const double target = 1.0 / std::sqrt(3.0);
  c.require(std::abs(std::abs(rel.sigma) - target) < 1e-3,
            "|sigma| " + detail::num(std::abs(rel.sigma)) + " = 1/sqrt(3) +- 1e-3");

  // Rotate the initial normal frame by a seeded orthogonal matrix; the
  // residual is frame independent.
  {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    Eigen::Matrix3d G;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G(i, j) = gauss(rng);
    const Eigen::Matrix3d Q = Eigen::HouseholderQR<Eigen::Matrix3d>(G).householderQ();
    std::vector<Vec> rotated(3, Vec::Zero(curve.dim));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rotated[i] += Q(i, j) * rm.N[0][j];
    const auto rel2 = detect_rm_linear_relation(rm_apparatus(curve, rotated));
    const double change = std::abs(rel2.residual - rel.residual);
    c.require(change < 1e-10,
              "residual change under frame rotation " + detail::num(change) + " < 1e-10");
  }

  const auto neg = detect_rm_linear_relation(rm_apparatus(detail::s4_test_curve(false, ds)));
  c.require(neg.residual > 1e-2,
            "negative control residual " + detail::num(neg.residual) + " > 1e-2");
  return {4, "RM linear relation on S^4", c.pass(), 0.0, c.detail()};
}

inline CriterionResult criterion5(double ds) {
  detail::Check c;
  std::vector<double> s, kap, kp, tau;
  for (double x = 0.15 * M_PI; x <= 0.85 * M_PI; x += ds) {
    s.push_back(x);
    kap.push_back(1.0 / std::sin(x));
    kp.push_back(-std::cos(x) / (std::sin(x) * std::sin(x)));
    tau.push_back(1.0);
  }
  const auto F = fourth_order_residual(kap, kp, tau, ds);
  double F_max = 0.0;
  for (double f : F) F_max = std::max(F_max, std::abs(f));
  c.require(F_max < 1e-3, "max 4th-order residual " + detail::num(F_max) + " < 1e-3");

  std::vector<double> C(s.size());
  for (size_t i = 0; i < s.size(); ++i) C[i] = invariant_C(kap[i], kp[i], tau[i]);
  double id_err = 0.0;
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    const double dC = (C[i + 1] - C[i - 1]) / (2.0 * ds);
    const double rhs = (-2.0 * kp[i] / (tau[i] * kap[i] * kap[i])) * F[i];
    id_err = std::max(id_err, std::abs(dC - rhs));
  }
  c.require(id_err < 1e-6, "derivative identity err " + detail::num(id_err) + " < 1e-6");
  return {5, "derivative identity", c.pass(), 0.0, c.detail()};
}

inline CriterionResult criterion6(double ds) {
  detail::Check c;
  for (const double R : {1.0, 2.0}) {
    for (const double tau0 : {1.0, 2.0}) {
      std::vector<double> kap, kp, tau;
      for (double x = 0.15 * M_PI / tau0; x <= 0.85 * M_PI / tau0; x += ds) {
        const double sn = std::sin(tau0 * x), cs = std::cos(tau0 * x);
        kap.push_back(1.0 / (R * sn));
        kp.push_back(-tau0 * cs / (R * sn * sn));
        tau.push_back(tau0);
      }
      const auto rep = detect_euclidean(kap, kp, tau, ds);
      const std::string tag = "R=" + detail::num(R) + " tau=" + detail::num(tau0);
      c.require(rep.verdict == Verdict::UmbilicalNonGeodesic, tag + " sphere verdict");
      c.require(std::abs(rep.C_estimate - R * R) < 1e-6,
                tag + " C err " + detail::num(std::abs(rep.C_estimate - R * R)) +
                    " < 1e-6");
    }
  }
  // Circular helix: constant kappa and tau; residual tau/kappa, never zero.
  for (const double kap0 : {1.0, 2.0}) {
    const double tau0 = 1.5;
    const size_t m = 2000;
    std::vector<double> kap(m, kap0), kp(m, 0.0), tau(m, tau0);
    const auto rep = detect_euclidean(kap, kp, tau, ds);
    c.require(rep.verdict == Verdict::NotUmbilical,
              "helix kappa=" + detail::num(kap0) + " rejected");
    double res_err = 0.0;
    for (double f : rep.residual_fourth_order)
      res_err = std::max(res_err, std::abs(f - tau0 / kap0));
    c.require(res_err < 1e-6, "helix residual = tau/kappa err " +
                                  detail::num(res_err) + " < 1e-6");
  }
  return {6, "Euclidean baseline", c.pass(), 0.0, c.detail()};
}

inline CriterionResult criterion7(double ds) {
  detail::Check c;

  // (a) frame orthonormality over 10^4 samples.
  {
    const auto circle = oracle_circle_s3(std::sqrt(3.0) / 2.0, 10.0, ds);
    const auto f = frenet_apparatus(circle);
    double drift = 0.0;
    for (int k = 0; k < f.size(); ++k) {
      const Vec& a = circle.p[f.first + k];
      const Vec vecs[4] = {a, f.T[k], f.N[k], f.B[k]};
      const double eta[4] = {1.0, 1.0, 1.0, 1.0};  // c = +1
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          const double expect = i == j ? eta[i] : 0.0;
          drift = std::max(drift, std::abs(inner(vecs[i], vecs[j], 1) - expect));
        }
    }
    c.require(drift < 1e-6,
              "Frenet orthonormality drift " + detail::num(drift) + " < 1e-6");
    const auto rm = rm_apparatus(circle);
    double rmdrift = 0.0;
    for (int k = 0; k < rm.size(); ++k)
      for (size_t i = 0; i < rm.N[k].size(); ++i)
        for (size_t j = i; j < rm.N[k].size(); ++j) {
          const double expect = i == j ? 1.0 : 0.0;
          rmdrift = std::max(rmdrift,
                             std::abs(inner(rm.N[k][i], rm.N[k][j], 1) - expect));
        }
    c.require(rmdrift < 1e-6, "RM orthonormality drift " + detail::num(rmdrift) + " < 1e-6");
  }

  // (b) verdict and C invariant under seeded isometries.
  {
    const auto curve = synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.15 * M_PI,
                                             0.85 * M_PI, ds);
    const auto base = detect(curve);
    double dC = 0.0;
    bool verdict_ok = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto rep = detect(curve.transformed(random_isometry(-1, seed)));
      verdict_ok = verdict_ok && rep.verdict == base.verdict;
      dC = std::max(dC, std::abs(rep.C_estimate - base.C_estimate));
    }
    c.require(verdict_ok, "verdict invariant under 20 isometries");
    c.require(dC < 1e-8, "C change under isometries " + detail::num(dC) + " < 1e-8");
  }

  // (c) halving ds improves kappa/tau recovery by >= 3x.
  {
    auto err = [](double h) {
      const auto curve =
          synthesize_horosphere(1.0, M_PI / 2.0, 0.0, 0.0, 0.15 * M_PI, 0.85 * M_PI, h);
      const auto e = detail::recovery_error(frenet_apparatus(curve), 1.0, 1.0);
      return e.kappa_rel + e.tau_abs;
    };
    const double coarse = err(2.0 * ds), fine = err(ds);
    c.require(coarse / fine >= 3.0,
              "convergence ratio " + detail::num(coarse / fine) + " >= 3");
  }
  return {7, "numerical hygiene", c.pass(), 0.0, c.detail()};
}

inline std::vector<CriterionResult> run_acceptance(double ds = 1e-3,
                                                   std::ostream* os = nullptr) {
  using Runner = std::function<CriterionResult(double)>;
  const std::vector<Runner> runners = {criterion1, criterion2, criterion3, criterion4,
                                       criterion5, criterion6, criterion7};
  std::vector<CriterionResult> results;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& run : runners) {
    const auto c0 = std::chrono::steady_clock::now();
    CriterionResult r = run(ds);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    if (r.id == 1 && r.seconds >= 1.0) {
      r.pass = false;
      r.detail += "; FAILED runtime < 1 s";
    }
    if (r.id == 2 && r.seconds >= 4.0) {  // two sub-cases at < 2 s each
      r.pass = false;
      r.detail += "; FAILED runtime < 2 s per case";
    }
    if (os)
      *os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name
          << ", " << detail::num(r.seconds) << " s): " << r.detail << "\n";
    results.push_back(std::move(r));
  }
  // Criterion 8: the whole suite end-to-end in < 60 s with zero failures.
  CriterionResult total;
  total.id = 8;
  total.name = "selftest end-to-end";
  total.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  total.pass = total.seconds < 60.0;
  for (const auto& r : results) total.pass = total.pass && r.pass;
  total.detail = "total " + detail::num(total.seconds) + " s";
  if (os)
    *os << (total.pass ? "PASS" : "FAIL") << " criterion 8 (" << total.name << "): "
        << total.detail << "\n";
  results.push_back(std::move(total));
  return results;
}

}  // namespace umbilic::selftest
