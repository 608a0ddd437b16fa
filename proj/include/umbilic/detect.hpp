#pragma once

// Membership tests and surface recovery. The third-order invariant
//   C = 1/kappa^2 + kappa'^2 / (kappa^4 tau^2)
// is constant, equal to 1/H^2, exactly when the curve lies on a totally
// umbilical surface of mean curvature H != 0; the fourth-order residual
//   tau/kappa - d/ds[ kappa' / (kappa^2 tau) ]
// vanishes in that case. tau = 0 curves sit on totally geodesic surfaces.

#include "umbilic/frames.hpp"

#include <Eigen/SVD>

#include <numeric>
#include <optional>

namespace umbilic {

struct DetectOptions {
  double tau_zero_tol = 1e-5;     // below this |tau| the tau = 0 branch applies
  double C_spread_tol = 0.01;     // relative spread of C over the window
  double horosphere_band = 0.02;  // |C - 1| < band classifies as horosphere
  double kappa_min = kKappaMinDefault;
  double kappa_prime_min = 1e-6;   // samples excluded from 4th-order aggregation
  double fourth_order_ratio = 0.5;  // reject when median|F| exceeds this times tau/kappa
};

enum class Verdict { TotallyGeodesic, UmbilicalNonGeodesic, NotUmbilical, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::TotallyGeodesic: return "TotallyGeodesic";
    case Verdict::UmbilicalNonGeodesic: return "UmbilicalNonGeodesic";
    case Verdict::NotUmbilical: return "NotUmbilical";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct DetectionReport {
  Verdict verdict = Verdict::Inconclusive;
  int c = -1;
  double C_estimate = std::numeric_limits<double>::quiet_NaN();
  double C_spread = std::numeric_limits<double>::quiet_NaN();  // max relative deviation
  double H_estimate = std::numeric_limits<double>::quiet_NaN();
  std::optional<UmbilicalSurface> recovered_surface;
  std::vector<double> residual_third_order;   // per-sample C_i - median(C)
  std::vector<double> residual_fourth_order;  // per-sample fourth-order residual
  double window_lo = 0.0, window_hi = 0.0;    // trimmed s range actually used
  DetectOptions options;
};

inline double invariant_C(double kappa, double kappa_prime, double tau) {
  if (kappa <= 0.0) throw std::invalid_argument("invariant_C: kappa must be > 0");
  if (tau == 0.0)
    throw std::domain_error("invariant_C: undefined for tau = 0 (use the tau=0 branch)");
  const double k2 = kappa * kappa;
  const double g = kappa_prime / (k2 * tau);
  return 1.0 / k2 + g * g;
}

// tau/kappa - d/ds[kappa' / (kappa^2 tau)] via central differences
// (second-order one-sided at the two ends).
inline std::vector<double> fourth_order_residual(const std::vector<double>& kappa,
                                                 const std::vector<double>& kappa_prime,
                                                 const std::vector<double>& tau,
                                                 double ds) {
  const int m = static_cast<int>(kappa.size());
  if (m < 3) throw std::invalid_argument("fourth_order_residual: window too short");
  std::vector<double> g(m), out(m);
  for (int i = 0; i < m; ++i) {
    if (tau[i] == 0.0)
      throw std::domain_error("fourth_order_residual: tau = 0 in window");
    g[i] = kappa_prime[i] / (kappa[i] * kappa[i] * tau[i]);
  }
  for (int i = 0; i < m; ++i) {
    double gp;
    if (i >= 1 && i <= m - 2)
      gp = (g[i + 1] - g[i - 1]) / (2.0 * ds);
    else if (i == 0)
      gp = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * ds);
    else
      gp = (3.0 * g[m - 1] - 4.0 * g[m - 2] + g[m - 3]) / (2.0 * ds);
    out[i] = tau[i] / kappa[i] - gp;
  }
  return out;
}

namespace detail {

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::runtime_error("median of empty set");
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
  return 0.5 * (hi + v[mid - 1]);
}

inline Vec coordinate_median(const std::vector<Vec>& pts) {
  Vec out(pts[0].size());
  for (int j = 0; j < out.size(); ++j) {
    std::vector<double> col(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) col[i] = pts[i][j];
    out[j] = median(std::move(col));
  }
  return out;
}

}  // namespace detail

// Median of the recovery vector beta(s) = alpha + N/kappa - (kappa'/(kappa^2 tau)) B
// over the samples where tau is usable. Constant in theory on umbilical curves.
inline Vec recover_beta_vector(const SampledCurve& curve, const FrenetData& f,
                               double tau_zero_tol = 1e-5) {
  std::vector<Vec> betas;
  for (int k = 0; k < f.size(); ++k) {
    if (f.low_confidence[k] || std::abs(f.tau[k]) < tau_zero_tol) continue;
    const int i = f.first + k;
    betas.push_back(curve.p[i] + f.N[k] / f.kappa[k] -
                    (f.kappa_prime[k] / (f.kappa[k] * f.kappa[k] * f.tau[k])) * f.B[k]);
  }
  if (betas.size() < 3)
    throw std::domain_error("recover_beta_vector: no usable tau != 0 window");
  return detail::coordinate_median(betas);
}

// Recover the umbilical surface from a curve whose invariant C is constant.
// b = median beta; sigma = <alpha, b> (which is -1 for c = -1, +1 for c = +1
// before normalization); classification then normalizes (a, sigma).
inline UmbilicalSurface recover_surface(const SampledCurve& curve, const FrenetData& f,
                                        const DetectOptions& opt = {}) {
  Vec b = recover_beta_vector(curve, f, opt.tau_zero_tol);
  std::vector<double> dots(curve.size());
  for (int i = 0; i < curve.size(); ++i) dots[i] = inner(curve.p[i], b, curve.c);
  const double sigma_raw = detail::median(std::move(dots));
  const double bb = inner(b, b, curve.c);

  // Horosphere band: a near-null b is classified as exactly null.
  if (curve.c == -1 && std::abs(bb) < opt.horosphere_band) {
    UmbilicalSurface S;
    S.a = b / std::abs(sigma_raw);
    S.sigma = sigma_raw < 0.0 ? -1.0 : 1.0;
    if (S.sigma > 0.0) {
      S.a = -S.a;
      S.sigma = -1.0;
    }
    S.c = -1;
    S.epsilon = 0.0;
    S.kind = SurfaceKind::Horosphere;
    S.lambda = 1.0;
    S.H = -1.0;
    S.K_ext = 1.0;
    S.K = 0.0;
    return S;
  }
  return classify_surface(b, sigma_raw, curve.c);
}

namespace detail {

// Shared constancy pipeline over per-sample (kappa, kappa', tau) series.
inline DetectionReport constancy_pipeline(const std::vector<double>& s,
                                          const std::vector<double>& kappa,
                                          const std::vector<double>& kappa_prime,
                                          const std::vector<double>& tau, double ds,
                                          int c, const DetectOptions& opt) {
  DetectionReport rep;
  rep.c = c;
  rep.options = opt;
  const int m = static_cast<int>(kappa.size());

  double tau_max = 0.0;
  for (double t : tau) tau_max = std::max(tau_max, std::abs(t));
  if (tau_max < opt.tau_zero_tol) {
    rep.verdict = Verdict::TotallyGeodesic;
    rep.window_lo = s.front();
    rep.window_hi = s.back();
    return rep;
  }

  std::vector<int> keep;
  for (int i = 0; i < m; ++i)
    if (std::abs(tau[i]) >= opt.tau_zero_tol) keep.push_back(i);
  if (keep.empty()) {
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }
  rep.window_lo = s[keep.front()];
  rep.window_hi = s[keep.back()];

  std::vector<double> C(keep.size());
  for (size_t j = 0; j < keep.size(); ++j) {
    const int i = keep[j];
    C[j] = invariant_C(kappa[i], kappa_prime[i], tau[i]);
  }
  const double C_mean =
      std::accumulate(C.begin(), C.end(), 0.0) / static_cast<double>(C.size());
  double spread = 0.0;
  rep.residual_third_order.resize(C.size());
  for (size_t j = 0; j < C.size(); ++j) {
    rep.residual_third_order[j] = C[j] - C_mean;
    spread = std::max(spread, std::abs(C[j] - C_mean));
  }
  rep.C_estimate = C_mean;
  rep.C_spread = spread / std::abs(C_mean);

  // Fourth-order residual over the kept window. A constant C is necessary
  // but not sufficient (constant-kappa series have constant C too), so the
  // residual gets the final say. Samples with kappa' ~ 0 are excluded from
  // aggregation unless the whole window is like that (constant kappa), in
  // which case the residual alone decides.
  double F_ratio = 0.0;
  {
    std::vector<double> kw, kpw, tw;
    for (int i : keep) {
      kw.push_back(kappa[i]);
      kpw.push_back(kappa_prime[i]);
      tw.push_back(tau[i]);
    }
    if (kw.size() >= 3) {
      rep.residual_fourth_order = fourth_order_residual(kw, kpw, tw, ds);
      std::vector<double> absF, scale;
      for (size_t j = 0; j < kw.size(); ++j) {
        if (std::abs(kpw[j]) < opt.kappa_prime_min) continue;
        absF.push_back(std::abs(rep.residual_fourth_order[j]));
        scale.push_back(std::abs(tw[j] / kw[j]));
      }
      if (absF.empty()) {
        for (size_t j = 0; j < kw.size(); ++j) {
          absF.push_back(std::abs(rep.residual_fourth_order[j]));
          scale.push_back(std::abs(tw[j] / kw[j]));
        }
      }
      F_ratio = median(std::move(absF)) / median(std::move(scale));
    }
  }

  if (rep.C_spread < opt.C_spread_tol && C_mean > 0.0 &&
      F_ratio < opt.fourth_order_ratio) {
    rep.verdict = Verdict::UmbilicalNonGeodesic;
    rep.H_estimate = 1.0 / std::sqrt(C_mean);
  } else {
    rep.verdict = Verdict::NotUmbilical;
  }
  return rep;
}

}  // namespace detail

// Full detection pipeline for curves in H^3 / S^3.
inline DetectionReport detect(const SampledCurve& curve, const DetectOptions& opt = {}) {
  if (curve.c == 0)
    throw std::invalid_argument("detect: use detect_euclidean for c = 0 data");
  FrenetData f = frenet_apparatus(curve, opt.kappa_min);

  DetectionReport rep =
      detail::constancy_pipeline(f.s, f.kappa, f.kappa_prime, f.tau, curve.ds,
                                 curve.c, opt);

  if (rep.verdict == Verdict::TotallyGeodesic) {
    // tau = 0: B is a constant vector and the curve lies on U_{B,0}.
    Vec b = detail::coordinate_median(f.B);
    rep.recovered_surface = classify_surface(b, 0.0, curve.c);
    return rep;
  }
  if (rep.verdict == Verdict::UmbilicalNonGeodesic) {
    rep.recovered_surface = recover_surface(curve, f, opt);
    rep.H_estimate = std::abs(rep.recovered_surface->H) > 0.0
                         ? std::abs(rep.recovered_surface->H)
                         : rep.H_estimate;
  }
  return rep;
}

// Euclidean baseline on extracted (kappa, kappa', tau) series: C = R^2 on
// spheres; the tau = 0 branch reports a plane (TotallyGeodesic verdict).
inline DetectionReport detect_euclidean(const std::vector<double>& kappa,
                                        const std::vector<double>& kappa_prime,
                                        const std::vector<double>& tau, double ds,
                                        const DetectOptions& opt = {}) {
  if (kappa.size() != kappa_prime.size() || kappa.size() != tau.size())
    throw std::invalid_argument("detect_euclidean: series length mismatch");
  std::vector<double> s(kappa.size());
  for (size_t i = 0; i < s.size(); ++i) s[i] = i * ds;
  return detail::constancy_pipeline(s, kappa, kappa_prime, tau, ds, 0, opt);
}

// Higher-dimensional detection: least-squares linear relation
// sum_i a_i kappa_i(s) + sigma = 0 over the RM curvatures, solved as the
// smallest singular vector of the (kappa_1..kappa_n, 1) row matrix and
// renormalized so |a| = 1 (sigma then plays the mean-curvature role).
struct RMRelation {
  Vec a;                  // n coefficients, unit norm
  double sigma = 0.0;     // normalized constant term
  double residual = 0.0;  // smallest singular value / sqrt(samples)
  bool ambiguous = false;
};

inline RMRelation detect_rm_linear_relation(const RMData& rm) {
  const int m = rm.size();
  if (m == 0) throw std::invalid_argument("detect_rm_linear_relation: empty data");
  const int n = static_cast<int>(rm.kappas[0].size());
  if (m < n + 2)
    throw std::invalid_argument("detect_rm_linear_relation: need at least n+2 samples");

  Mat K(m, n + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) K(i, j) = rm.kappas[i][j];
    K(i, n) = 1.0;
  }
  Eigen::JacobiSVD<Mat> svd(K, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Vec x = svd.matrixV().col(n);

  RMRelation rel;
  rel.residual = sv[n] / std::sqrt(static_cast<double>(m));
  if (n >= 1 && sv[n - 1] < 1e-6 * sv[0]) rel.ambiguous = true;

  const double an = x.head(n).norm();
  if (an < 1e-14) {
    rel.ambiguous = true;
    rel.a = x.head(n);
    rel.sigma = x[n];
    return rel;
  }
  rel.a = x.head(n) / an;
  rel.sigma = x[n] / an;
  return rel;
}

}  // namespace umbilic
