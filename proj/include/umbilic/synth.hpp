#pragma once

// Synthesis of curves with prescribed constant torsion on totally umbilical
// surfaces, by classical RK4 integration of the governing ODE systems, plus
// closed-form oracle curves for testing. On such a surface with mean
// curvature H != 0 the curvature is kappa(s) = |H| / sin(tau s + a); the
// normal decomposition splits it as kappa^2 = kappa_g^2 + H^2, giving the
// geodesic curvature kappa_g(s) = +-|H| cot(tau s + a) used by the general
// integrator.

#include "umbilic/curve.hpp"
#include "umbilic/frames.hpp"

#include <functional>
#include <map>

namespace umbilic {

inline double constant_torsion_curvature(double H, double tau, double a, double s) {
  if (H == 0.0 || tau == 0.0)
    throw std::invalid_argument("constant_torsion_curvature: need H != 0, tau != 0");
  const double sn = std::sin(tau * s + a);
  if (sn <= 0.0)
    throw std::domain_error("constant_torsion_curvature: sin(tau s + a) <= 0");
  return std::abs(H) / sn;
}

struct SynthStats {
  double max_constraint_drift = 0.0;  // before per-step projection
};

namespace detail {

// Integrate outward from s0 on the grid {s0 + k ds} covering [s_lo, s_hi]
// with classical RK4. step(y, s, h) advances the state by one step; the
// returned map is keyed by grid index k.
template <typename State, typename Step>
std::map<int, State> integrate_bidirectional(const State& y0, double s0, double s_lo,
                                             double s_hi, double ds, Step&& step) {
  std::map<int, State> out;
  out[0] = y0;
  const int kf = static_cast<int>(std::floor((s_hi - s0) / ds + 1e-12));
  const int kb = static_cast<int>(std::floor((s0 - s_lo) / ds + 1e-12));
  State y = y0;
  for (int k = 0; k < kf; ++k) out[k + 1] = y = step(y, s0 + k * ds, ds);
  y = y0;
  for (int k = 0; k < kb; ++k) out[-(k + 1)] = y = step(y, s0 - k * ds, -ds);
  return out;
}

inline void require_margin(double s_lo, double s_hi, double tau, double phase) {
  // Maximal domain: sin(tau s + phase) > 0.
  const double lo = -phase / tau, hi = (M_PI - phase) / tau;
  const double a = std::min(lo, hi), b = std::max(lo, hi);
  const double margin = 1e-3 * (b - a);
  if (s_lo <= a + margin || s_hi >= b - margin || s_lo >= s_hi)
    throw std::domain_error("synthesize: s range touches the kappa blow-up endpoints");
}

}  // namespace detail

// Constant-torsion curve on the horosphere x3 + x4 = 1 of H^3
// (U_{a,sigma} with a = (0,0,1,-1), sigma = 1, i.e. sigma = -1 after
// normalization). The planar components integrate
//   x1' = cos(theta(s)),  x2' = sin(theta(s)),  theta = (1/tau) log sin(tau s)
// and x3, x4 are determined by the membership identities, so every sample
// satisfies the hyperquadric and membership constraints exactly.
// mirror = true takes the theta' = -cot(tau s) branch.
inline SampledCurve synthesize_horosphere(double tau, double s0, double x1_0,
                                          double x2_0, double s_lo, double s_hi,
                                          double ds, bool mirror = false) {
  if (tau == 0.0) throw std::invalid_argument("synthesize_horosphere: tau = 0");
  detail::require_margin(s_lo, s_hi, tau, 0.0);
  if (s0 <= s_lo || s0 >= s_hi)
    throw std::invalid_argument("synthesize_horosphere: s0 outside range");

  const double sign = mirror ? -1.0 : 1.0;
  auto deriv = [&](double s) -> Eigen::Vector2d {
    const double th = sign * std::log(std::sin(tau * s)) / tau;
    return {std::cos(th), std::sin(th)};
  };
  auto step = [&](const Eigen::Vector2d& y, double s, double h) {
    const Eigen::Vector2d k1 = deriv(s);
    const Eigen::Vector2d k23 = deriv(s + h / 2.0);
    const Eigen::Vector2d k4 = deriv(s + h);
    return Eigen::Vector2d(y + (h / 6.0) * (k1 + 4.0 * k23 + k4));
  };

  auto states = detail::integrate_bidirectional(Eigen::Vector2d(x1_0, x2_0), s0, s_lo,
                                                s_hi, ds, step);
  SampledCurve out;
  out.c = -1;
  out.dim = 4;
  out.ds = ds;
  for (const auto& [k, xy] : states) {
    const double r2 = xy.squaredNorm();
    Vec p(4);
    p << xy[0], xy[1], -r2 / 2.0, 1.0 + r2 / 2.0;
    out.s.push_back(s0 + k * ds);
    out.p.push_back(std::move(p));
  }
  return out;
}

// Constant-torsion curve on the geodesic sphere U_{(0,0,0,1),sigma} of S^3,
// identified with the round sphere S^2(R), R = sqrt(1 - sigma^2), in the
// chart alpha = R (cos phi cos theta, cos phi sin theta, sin phi). The
// second derivatives close the system via the differentiated arc-length
// constraint phi'^2 + theta'^2 cos^2 phi = 1/R^2 together with the
// geodesic-curvature relation <u'' + u, n_g> = kappa_g(s), whose square-root
// sign is fixed by kg_sign and continued across the cot zero.
inline SampledCurve synthesize_geodesic_sphere_s3(double tau, double s0, double phi0,
                                                  double theta0, double dphi0,
                                                  double dtheta0, double s_lo,
                                                  double s_hi, double ds,
                                                  double sigma = 0.5,
                                                  double kg_sign = 1.0,
                                                  SynthStats* stats = nullptr) {
  if (tau == 0.0) throw std::invalid_argument("synthesize_geodesic_sphere_s3: tau = 0");
  if (sigma == 0.0 || std::abs(sigma) >= 1.0)
    throw std::invalid_argument("synthesize_geodesic_sphere_s3: need 0 < |sigma| < 1");
  detail::require_margin(s_lo, s_hi, tau, 0.0);
  if (s0 <= s_lo || s0 >= s_hi)
    throw std::invalid_argument("synthesize_geodesic_sphere_s3: s0 outside range");

  const double R = std::sqrt(1.0 - sigma * sigma);
  const double H = sigma / R;
  const double inv_R2 = 1.0 / (R * R);
  {
    const double con = dphi0 * dphi0 + dtheta0 * dtheta0 * std::cos(phi0) * std::cos(phi0);
    if (std::abs(con - inv_R2) > 1e-10)
      throw std::invalid_argument(
          "synthesize_geodesic_sphere_s3: initial conditions violate the arc-length "
          "constraint");
  }

  using State = Eigen::Vector4d;  // (phi, theta, phi', theta')
  auto embed3 = [&](double phi, double theta) -> Eigen::Vector3d {
    return R * Eigen::Vector3d(std::cos(phi) * std::cos(theta),
                               std::cos(phi) * std::sin(theta), std::sin(phi));
  };
  auto rhs = [&](double s, const State& y) -> State {
    const double phi = y[0], theta = y[1], p1 = y[2], t1 = y[3];
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double ct = std::cos(theta), st = std::sin(theta);
    const Eigen::Vector3d u = embed3(phi, theta);
    const Eigen::Vector3d A_phi = R * Eigen::Vector3d(-sp * ct, -sp * st, cp);
    const Eigen::Vector3d A_theta = R * Eigen::Vector3d(-cp * st, cp * ct, 0.0);
    const Eigen::Vector3d dAp_dth = R * Eigen::Vector3d(sp * st, -sp * ct, 0.0);
    const Eigen::Vector3d r = -u * p1 * p1 + 2.0 * dAp_dth * p1 * t1 -
                              Eigen::Vector3d(u[0], u[1], 0.0) * t1 * t1;
    const Eigen::Vector3d up = A_phi * p1 + A_theta * t1;
    const Eigen::Vector3d ng = u.cross(up) / R;
    const double kg = kg_sign * std::abs(H) / std::tan(tau * s);

    Eigen::Matrix2d M;
    M << p1, cp * cp * t1, A_phi.dot(ng), A_theta.dot(ng);
    if (std::abs(M.determinant()) < 1e-10)
      throw std::domain_error(
          "synthesize_geodesic_sphere_s3: degenerate velocity direction, integration "
          "aborted");
    const Eigen::Vector2d b(sp * cp * p1 * t1 * t1, kg - (r + u).dot(ng));
    const Eigen::Vector2d acc = M.inverse() * b;
    return State(p1, t1, acc[0], acc[1]);
  };
  auto step = [&](const State& y, double s, double h) -> State {
    const State k1 = rhs(s, y);
    const State k2 = rhs(s + h / 2.0, y + (h / 2.0) * k1);
    const State k3 = rhs(s + h / 2.0, y + (h / 2.0) * k2);
    const State k4 = rhs(s + h, y + h * k3);
    State out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    // Track drift, then project (phi', theta') back onto the constraint.
    const double cp = std::cos(out[0]);
    const double con = out[2] * out[2] + out[3] * out[3] * cp * cp;
    if (stats)
      stats->max_constraint_drift =
          std::max(stats->max_constraint_drift, std::abs(con - inv_R2));
    const double scale = 1.0 / (R * std::sqrt(con));
    out[2] *= scale;
    out[3] *= scale;
    if (std::abs(cp) < 1e-6)
      throw std::domain_error("synthesize_geodesic_sphere_s3: chart degeneracy cos(phi)=0");
    return out;
  };

  auto states = detail::integrate_bidirectional(State(phi0, theta0, dphi0, dtheta0), s0,
                                                s_lo, s_hi, ds, step);
  SampledCurve out;
  out.c = 1;
  out.dim = 4;
  out.ds = ds;
  for (const auto& [k, y] : states) {
    const Eigen::Vector3d u = embed3(y[0], y[1]);
    Vec p(4);
    p << u[0], u[1], u[2], sigma;
    out.s.push_back(s0 + k * ds);
    out.p.push_back(std::move(p));
  }
  return out;
}

namespace detail {

// A base point on U_{a,sigma} (the surface is assumed valid/normalized).
inline Vec surface_base_point(const UmbilicalSurface& S) {
  const int dim = static_cast<int>(S.a.size());
  const int c = S.c;
  Vec u = Vec::Zero(dim);
  u[dim - 1] = 1.0;  // <u,u> = c
  const double ua = inner(u, S.a, c);
  if (S.epsilon == 0.0) {
    // p = mu u + nu a with <p,a> = sigma, <p,p> = -1.
    if (std::abs(ua) < 1e-12)
      throw std::invalid_argument("surface_base_point: degenerate null a");
    const double mu = S.sigma / ua;
    const double nu = (mu * mu - 1.0) / (2.0 * mu * ua);
    Vec p = mu * u + nu * S.a;
    if (p[dim - 1] <= 0.0) throw std::domain_error("surface_base_point: lower sheet");
    return p;
  }
  // p = (sigma/eps) a + w with w orthogonal to a, <w,w> = c - sigma^2/eps.
  Vec w0 = u - (ua / S.epsilon) * S.a;
  const double target = c - S.sigma * S.sigma / S.epsilon;
  double q = inner(w0, w0, c);
  if (q * target <= 0.0) {
    // u was unusable (e.g. parallel to a); fall back to a spacelike axis.
    for (int k = 0; k < dim && q * target <= 0.0; ++k) {
      w0 = Vec::Zero(dim);
      w0[k] = 1.0;
      w0 -= (inner(w0, S.a, c) / S.epsilon) * S.a;
      q = inner(w0, w0, c);
    }
    if (q * target <= 0.0)
      throw std::runtime_error("surface_base_point: no suitable direction found");
  }
  Vec p = (S.sigma / S.epsilon) * S.a + std::sqrt(target / q) * w0;
  if (c == -1 && p[dim - 1] <= 0.0)
    p = (S.sigma / S.epsilon) * S.a - std::sqrt(target / q) * w0;
  if (c == -1 && p[dim - 1] <= 0.0)
    throw std::domain_error("surface_base_point: lower sheet");
  return p;
}

}  // namespace detail

// General synthesis of a curve with prescribed geodesic curvature kappa_g(s)
// on an arbitrary umbilical surface, by integrating the surface frame
//   P' = T,   T' = kappa_g n_g + H xi(P) - c P,   n_g' = -kappa_g T
// with RK4 and a per-step re-orthonormalization of (P, T, n_g).
inline SampledCurve synthesize_on_surface(const UmbilicalSurface& S,
                                          const std::function<double(double)>& kappa_g,
                                          double s0, double s_lo, double s_hi,
                                          double ds) {
  const int dim = static_cast<int>(S.a.size());
  const int c = S.c;
  const Vec p0 = detail::surface_base_point(S);
  const Vec xi0 = surface_normal(S, p0);

  // Tangent frame of the surface at p0.
  std::vector<std::pair<Vec, double>> basis = {{p0, static_cast<double>(c)}, {xi0, 1.0}};
  Vec t0(dim), g0(dim);
  {
    using umbilic::detail::complete_basis;
    t0 = complete_basis(basis, c, dim);
    basis.emplace_back(t0, 1.0);
    g0 = complete_basis(basis, c, dim);
  }

  using State = Vec;  // stacked (P, T, n_g)
  auto pack = [&](const Vec& P, const Vec& T, const Vec& G) {
    State y(3 * dim);
    y << P, T, G;
    return y;
  };
  auto rhs = [&](double s, const State& y) -> State {
    const Vec P = y.segment(0, dim), T = y.segment(dim, dim), G = y.segment(2 * dim, dim);
    const double kg = kappa_g(s);
    const Vec xi = c == -1 ? Vec(-S.lambda * (S.a + S.sigma * P))
                           : Vec(S.lambda * (S.a - S.sigma * P));
    return pack(T, kg * G + S.H * xi - c * P, -kg * T);
  };
  auto step = [&](const State& y, double s, double h) -> State {
    const State k1 = rhs(s, y);
    const State k2 = rhs(s + h / 2.0, y + (h / 2.0) * k1);
    const State k3 = rhs(s + h / 2.0, y + (h / 2.0) * k2);
    const State k4 = rhs(s + h, y + h * k3);
    State out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    Vec P = project_to_hyperquadric(out.segment(0, dim), c);
    Vec T = out.segment(dim, dim), G = out.segment(2 * dim, dim);
    umbilic::detail::project_out(T, P, c, c);
    T = umbilic::detail::normalized(std::move(T), c);
    umbilic::detail::project_out(G, P, c, c);
    umbilic::detail::project_out(G, T, 1.0, c);
    G = umbilic::detail::normalized(std::move(G), c);
    return pack(P, T, G);
  };

  auto states =
      detail::integrate_bidirectional(pack(p0, t0, g0), s0, s_lo, s_hi, ds, step);
  SampledCurve out;
  out.c = c;
  out.dim = dim;
  out.ds = ds;
  for (const auto& [k, y] : states) {
    out.s.push_back(s0 + k * ds);
    out.p.push_back(y.segment(0, dim));
  }
  return out;
}

// Constant-torsion curve on an arbitrary umbilical surface with H != 0:
// kappa_g(s) = |H| cot(tau s + phase), the split of kappa(s) from the
// constant-torsion curvature law.
inline SampledCurve synthesize_umbilical(const UmbilicalSurface& S, double tau,
                                         double s0, double s_lo, double s_hi, double ds,
                                         double phase = 0.0, double kg_sign = 1.0) {
  if (S.H == 0.0)
    throw std::invalid_argument("synthesize_umbilical: totally geodesic target (H = 0)");
  if (tau == 0.0) throw std::invalid_argument("synthesize_umbilical: tau = 0");
  detail::require_margin(s_lo, s_hi, tau, phase);
  const double aH = std::abs(S.H);
  return synthesize_on_surface(
      S, [=](double s) { return kg_sign * aH / std::tan(tau * s + phase); }, s0, s_lo,
      s_hi, ds);
}

// Closed-form oracle: the circle of radius r in S^3,
//   alpha(s) = (r cos(s/r), r sin(s/r), 0, sqrt(1-r^2)),
// with kappa = sqrt(1-r^2)/r and tau = 0; it lies on U_{(0,0,0,1),sqrt(1-r^2)}.
inline SampledCurve oracle_circle_s3(double r, double length = 2.0, double ds = 1e-3) {
  if (r <= 0.0 || r > 1.0)
    throw std::invalid_argument("oracle_circle_s3: need 0 < r <= 1");
  SampledCurve out;
  out.c = 1;
  out.dim = 4;
  out.ds = ds;
  const double h = std::sqrt(1.0 - r * r);
  const int m = static_cast<int>(std::floor(length / ds)) + 1;
  for (int i = 0; i < m; ++i) {
    const double s = i * ds;
    Vec p(4);
    p << r * std::cos(s / r), r * std::sin(s / r), 0.0, h;
    out.s.push_back(s);
    out.p.push_back(std::move(p));
  }
  return out;
}

// Constant geodesic curvature curve on a totally umbilical surface of H^3,
// for the classification grid and negative/positive controls. epsilon
// selects the surface family: +1 equidistant (a = e1), 0 horosphere
// (a = (0,0,-1,1), sigma = -1), -1 geodesic sphere (a = -e4, |sigma| > 1).
inline SampledCurve oracle_equidistant_h3(double sigma, double epsilon, double kappa_g,
                                          double length = 2.0, double ds = 1e-3) {
  Vec a = Vec::Zero(4);
  if (epsilon > 0.0)
    a[0] = 1.0;
  else if (epsilon == 0.0) {
    a[2] = -1.0;
    a[3] = 1.0;
    sigma = -1.0;
  } else
    a[3] = -1.0;
  const UmbilicalSurface S = classify_surface(a, sigma, -1);
  return synthesize_on_surface(S, [=](double) { return kappa_g; }, 0.0, 0.0, length, ds);
}

}  // namespace umbilic
