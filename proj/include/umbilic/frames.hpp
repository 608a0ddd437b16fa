#pragma once

// Numerical Frenet and rotation-minimizing apparatus for arc-length
// parametrized curves. The Levi-Civita connection of M^{n+1}(c) is taken
// through the flat one: nabla_T T = alpha'' + c alpha, with alpha'' a
// second-order central difference.

#include "umbilic/curve.hpp"

#include <optional>
#include <vector>

namespace umbilic {

inline constexpr double kKappaMinDefault = 1e-4;
inline constexpr double kTolFrame = 1e-6;

// Per-sample Frenet data for a window of interior samples. Entry k refers to
// curve sample first + k. The two samples at each end of the window use
// one-sided stencils for tau and kappa'; they are flagged low-confidence.
struct FrenetData {
  int first = 1;
  std::vector<double> s;
  std::vector<Vec> T, N, B;
  std::vector<double> kappa, tau, kappa_prime;
  std::vector<bool> low_confidence;

  int size() const { return static_cast<int>(s.size()); }
};

struct RMData {
  int first = 1;
  std::vector<double> s;
  std::vector<Vec> T;
  std::vector<std::vector<Vec>> N;        // n normal legs per sample
  std::vector<std::vector<double>> kappas;  // kappa_i = <nabla_T T, N_i>

  int size() const { return static_cast<int>(s.size()); }
};

namespace detail {

// Remove the component of v along a unit (or hyperquadric-point) basis
// vector b with <b,b> = eta.
inline void project_out(Vec& v, const Vec& b, double eta, int c) {
  v -= (inner(v, b, c) / eta) * b;
}

inline Vec normalized(Vec v, int c) {
  const double q = inner(v, v, c);
  if (q <= 0.0) throw std::runtime_error("frames: degenerate (non-spacelike) vector");
  return v / std::sqrt(q);
}

// Metric-orthogonal completion of the given orthonormal set (pairs of
// vector and its squared norm eta), seeded from the best coordinate axis.
inline Vec complete_basis(const std::vector<std::pair<Vec, double>>& basis, int c,
                          int dim) {
  double best = -1.0;
  Vec bestv;
  for (int k = 0; k < dim; ++k) {
    Vec e = Vec::Zero(dim);
    e[k] = 1.0;
    for (const auto& [b, eta] : basis) project_out(e, b, eta, c);
    const double q = inner(e, e, c);
    if (q > best) {
      best = q;
      bestv = e;
    }
  }
  if (best <= 1e-12) throw std::runtime_error("frames: cannot complete basis");
  return bestv / std::sqrt(best);
}

}  // namespace detail

// nabla_T T at an interior sample: central difference alpha'' plus c alpha.
inline Vec covariant_accel(const SampledCurve& curve, int i) {
  if (i < 1 || i > curve.size() - 2)
    throw std::out_of_range("covariant_accel: boundary index, no central stencil");
  const double ds2 = curve.ds * curve.ds;
  Vec acc = (curve.p[i + 1] - 2.0 * curve.p[i] + curve.p[i - 1]) / ds2;
  if (curve.c != 0) acc += curve.c * curve.p[i];
  return acc;
}

// Unit tangent at an interior sample, re-orthogonalized against alpha.
inline Vec unit_tangent(const SampledCurve& curve, int i) {
  Vec t = (curve.p[i + 1] - curve.p[i - 1]) / (2.0 * curve.ds);
  if (curve.c != 0) detail::project_out(t, curve.p[i], curve.c, curve.c);
  return detail::normalized(std::move(t), curve.c);
}

// Frenet apparatus for a three-dimensional space form (n = 2) or for c = 0
// data in R^3. Throws if kappa drops below kappa_min anywhere in the window.
inline FrenetData frenet_apparatus(const SampledCurve& curve,
                                   double kappa_min = kKappaMinDefault) {
  const int m = curve.size();
  if (m < 7) throw std::invalid_argument("frenet_apparatus: curve too short");
  const int c = curve.c;
  if (c != 0 && curve.dim != 4)
    throw std::invalid_argument("frenet_apparatus: needs n = 2 (ambient R^4)");
  if (c == 0 && curve.dim != 3)
    throw std::invalid_argument("frenet_apparatus: c = 0 needs R^3 data");

  FrenetData f;
  f.first = 1;
  const int w = m - 2;
  f.s.resize(w);
  f.T.resize(w);
  f.N.resize(w);
  f.B.resize(w);
  f.kappa.resize(w);
  f.tau.resize(w);
  f.kappa_prime.resize(w);
  f.low_confidence.assign(w, false);

  for (int k = 0; k < w; ++k) {
    const int i = k + 1;
    f.s[k] = curve.s[i];
    Vec t = unit_tangent(curve, i);
    Vec acc = covariant_accel(curve, i);
    if (c != 0) detail::project_out(acc, curve.p[i], c, c);
    detail::project_out(acc, t, 1.0, c);
    const double kap = std::sqrt(std::max(0.0, inner(acc, acc, c)));
    if (kap < kappa_min)
      throw std::domain_error("frenet_apparatus: kappa below threshold near s = " +
                              std::to_string(curve.s[i]) + " (geodesic point)");
    f.kappa[k] = kap;
    f.N[k] = acc / kap;

    std::vector<std::pair<Vec, double>> basis;
    if (c != 0) basis.emplace_back(curve.p[i], static_cast<double>(c));
    basis.emplace_back(t, 1.0);
    basis.emplace_back(f.N[k], 1.0);
    Vec b = detail::complete_basis(basis, c, curve.dim);

    // Orientation: det[alpha, T, N, B] > 0 at the first sample (det[T,N,B]
    // for c = 0), then keep B continuous along the curve.
    if (k == 0) {
      Mat D(curve.dim, curve.dim);
      int col = 0;
      if (c != 0) D.col(col++) = curve.p[i];
      D.col(col++) = t;
      D.col(col++) = f.N[k];
      D.col(col++) = b;
      if (D.determinant() < 0.0) b = -b;
    } else if (inner(b, f.B[k - 1], c) < 0.0) {
      b = -b;
    }
    f.B[k] = b;
    f.T[k] = std::move(t);
  }

  // tau = <N', B> and kappa' by central differences inside the window,
  // second-order one-sided stencils at its two ends.
  auto d1 = [&](const std::vector<double>& y, int k) {
    if (k >= 2 && k <= w - 3) return (y[k + 1] - y[k - 1]) / (2.0 * curve.ds);
    if (k < 2) return (-3.0 * y[k] + 4.0 * y[k + 1] - y[k + 2]) / (2.0 * curve.ds);
    return (3.0 * y[k] - 4.0 * y[k - 1] + y[k - 2]) / (2.0 * curve.ds);
  };
  for (int k = 0; k < w; ++k) {
    Vec Np;
    if (k >= 2 && k <= w - 3) {
      Np = (f.N[k + 1] - f.N[k - 1]) / (2.0 * curve.ds);
    } else if (k < 2) {
      Np = (-3.0 * f.N[k] + 4.0 * f.N[k + 1] - f.N[k + 2]) / (2.0 * curve.ds);
      f.low_confidence[k] = true;
    } else {
      Np = (3.0 * f.N[k] - 4.0 * f.N[k - 1] + f.N[k - 2]) / (2.0 * curve.ds);
      f.low_confidence[k] = true;
    }
    f.tau[k] = inner(Np, f.B[k], c);
    f.kappa_prime[k] = d1(f.kappa, k);
  }
  return f;
}

// Rotation-minimizing frame by double-reflection transport of the normal
// legs, with a per-step metric Gram-Schmidt polish. Works in any ambient
// dimension. The default initial frame completes {alpha, T} by coordinate
// axes; any other choice differs by a constant rotation of the legs.
inline RMData rm_apparatus(const SampledCurve& curve,
                           std::optional<std::vector<Vec>> initial_frame = {}) {
  const int m = curve.size();
  if (m < 5) throw std::invalid_argument("rm_apparatus: curve too short");
  const int c = curve.c;
  const int n = c == 0 ? curve.dim - 1 : curve.codim();

  RMData rm;
  rm.first = 1;
  const int w = m - 2;
  rm.s.resize(w);
  rm.T.resize(w);
  rm.N.resize(w);
  rm.kappas.resize(w);

  for (int k = 0; k < w; ++k) {
    rm.s[k] = curve.s[k + 1];
    rm.T[k] = unit_tangent(curve, k + 1);
  }

  auto orthonormalize = [&](std::vector<Vec>& legs, int k) {
    for (int i = 0; i < static_cast<int>(legs.size()); ++i) {
      if (c != 0) detail::project_out(legs[i], curve.p[k + 1], c, c);
      detail::project_out(legs[i], rm.T[k], 1.0, c);
      for (int j = 0; j < i; ++j) detail::project_out(legs[i], legs[j], 1.0, c);
      legs[i] = detail::normalized(std::move(legs[i]), c);
    }
  };

  std::vector<Vec> legs;
  if (initial_frame) {
    legs = *initial_frame;
    if (static_cast<int>(legs.size()) != n)
      throw std::invalid_argument("rm_apparatus: initial frame has wrong size");
    orthonormalize(legs, 0);
  } else {
    std::vector<std::pair<Vec, double>> basis;
    if (c != 0) basis.emplace_back(curve.p[1], static_cast<double>(c));
    basis.emplace_back(rm.T[0], 1.0);
    for (int i = 0; i < n; ++i) {
      Vec leg = detail::complete_basis(basis, c, curve.dim);
      basis.emplace_back(leg, 1.0);
      legs.push_back(std::move(leg));
    }
  }

  auto reflect = [&](const Vec& v, const Vec& u) -> Vec {
    const double uu = inner(u, u, c);
    if (std::abs(uu) < 1e-28) return v;  // degenerate mirror, skip
    return v - (2.0 * inner(v, u, c) / uu) * u;
  };

  for (int k = 0; k < w; ++k) {
    Vec acc = covariant_accel(curve, k + 1);
    rm.N[k] = legs;
    rm.kappas[k].resize(n);
    for (int i = 0; i < n; ++i) rm.kappas[k][i] = inner(acc, legs[i], c);

    if (k + 1 < w) {
      const Vec u1 = curve.p[k + 2] - curve.p[k + 1];
      const Vec u2 = rm.T[k + 1] - reflect(rm.T[k], u1);
      for (auto& leg : legs) leg = reflect(reflect(leg, u1), u2);
      orthonormalize(legs, k + 1);
    }
  }
  return rm;
}

}  // namespace umbilic
