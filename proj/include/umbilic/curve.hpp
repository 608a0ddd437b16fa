#pragma once

// Arc-length parametrized sampled curves on the hyperquadric (or in R^3
// for c = 0) and chord-length reparametrization of raw point data.

#include "umbilic/spaceform.hpp"

#include <algorithm>
#include <vector>

namespace umbilic {

struct SampledCurve {
  int c = -1;          // model curvature sign
  int dim = 4;         // ambient dimension (n+2 for c != 0)
  double ds = 1e-3;    // uniform arc-length step
  std::vector<double> s;
  std::vector<Vec> p;

  int size() const { return static_cast<int>(p.size()); }
  int codim() const { return dim - 2; }  // n

  SampledCurve transformed(const Mat& M) const {
    SampledCurve out = *this;
    for (auto& q : out.p) q = M * q;
    return out;
  }
};

namespace detail {

// Geodesic distance between nearby hyperquadric points (chord length for c=0).
inline double step_length(const Vec& a, const Vec& b, int c) {
  if (c == 0) return (b - a).norm();
  const double d = inner(a, b, c);
  if (c == 1) return std::acos(std::clamp(d, -1.0, 1.0));
  return std::acosh(std::max(1.0, -d));
}

// 4-point Lagrange interpolation of the rows of P at parameter t, where
// knots[j] are the (non-uniform) parameter values.
inline Vec lagrange4(const std::vector<double>& knots, const std::vector<Vec>& P,
                     int j0, double t) {
  Vec out = Vec::Zero(P[0].size());
  for (int i = 0; i < 4; ++i) {
    double w = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k == i) continue;
      w *= (t - knots[j0 + k]) / (knots[j0 + i] - knots[j0 + k]);
    }
    out += w * P[j0 + i];
  }
  return out;
}

}  // namespace detail

// Resample a raw point sequence at uniform ds by cumulative chord-length
// parametrization with local cubic interpolation, re-projected to the
// hyperquadric. The s column starts at 0.
inline SampledCurve arclength_reparametrize(std::vector<Vec> points, int c,
                                            double ds = 1e-3) {
  if (points.size() < 4)
    throw std::invalid_argument("arclength_reparametrize: need at least 4 points");
  for (auto& q : points) q = project_to_hyperquadric(q, c);

  std::vector<double> L(points.size(), 0.0);
  for (size_t i = 1; i < points.size(); ++i) {
    const double d = detail::step_length(points[i - 1], points[i], c);
    if (d == 0.0)
      throw std::invalid_argument("arclength_reparametrize: repeated points");
    L[i] = L[i - 1] + d;
  }

  SampledCurve out;
  out.c = c;
  out.dim = static_cast<int>(points[0].size());
  out.ds = ds;
  const int m = static_cast<int>(std::floor(L.back() / ds)) + 1;
  int j = 0;
  for (int i = 0; i < m; ++i) {
    const double t = i * ds;
    while (j + 1 < static_cast<int>(L.size()) && L[j + 1] < t) ++j;
    int j0 = std::clamp(j - 1, 0, static_cast<int>(points.size()) - 4);
    Vec q = detail::lagrange4(L, points, j0, t);
    out.s.push_back(t);
    out.p.push_back(project_to_hyperquadric(q, c));
  }
  return out;
}

}  // namespace umbilic
