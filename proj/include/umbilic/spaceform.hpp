#pragma once

// Ambient model of the space forms M^{n+1}(c), c in {-1, 0, +1}:
// signature-aware linear algebra on R^{n+2}, the hyperquadric
// {<p,p> = c}, totally umbilical surfaces U_{a,sigma} and their
// classification, and the chart to the upper-half-space model of H^3.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace umbilic {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Residual tolerance for hyperquadric / tangency constraints.
inline constexpr double kTolConstraint = 1e-9;

// <u,v> = sum u_i v_i over the first n+1 coordinates + c * u_last v_last.
// For c = 0 the ambient is plain Euclidean R^dim (no hyperquadric), so the
// inner product is the full dot product.
inline double inner(const Vec& u, const Vec& v, int c) {
  if (u.size() != v.size())
    throw std::invalid_argument("inner: dimension mismatch");
  if (c == 0) return u.dot(v);
  const auto n = u.size() - 1;
  return u.head(n).dot(v.head(n)) + c * u[n] * v[n];
}

struct SpaceForm {
  int c = -1;  // curvature sign, -1 | 0 | +1
  double inner(const Vec& u, const Vec& v) const { return umbilic::inner(u, v, c); }
};

// Rescale p so that <p,p> = c exactly (up to rounding). Preserves the upper
// sheet for c = -1.
inline Vec project_to_hyperquadric(const Vec& p, int c) {
  if (c == 0) return p;
  const double q = inner(p, p, c);
  if (q * c <= 0.0)
    throw std::domain_error("project_to_hyperquadric: <p,p> has wrong sign");
  Vec out = p / std::sqrt(std::abs(q));
  if (c == -1 && out[out.size() - 1] <= 0.0)
    throw std::domain_error("project_to_hyperquadric: point on lower sheet");
  return out;
}

inline bool on_hyperquadric(const Vec& p, int c, double tol = kTolConstraint) {
  if (c == 0) return true;
  if (std::abs(inner(p, p, c) - c) > tol) return false;
  return c != -1 || p[p.size() - 1] > 0.0;
}

enum class SurfaceKind {
  TotallyGeodesicPlane,   // H^3, eps = +1, sigma = 0
  EquidistantSurface,     // H^3, eps = +1, sigma != 0
  Horosphere,             // H^3, eps =  0, sigma != 0
  GeodesicSphereH3,       // H^3, eps = -1, |sigma| > 1
  TotallyGeodesicSphere,  // S^3, sigma = 0
  GeodesicSphereS3,       // S^3, sigma != 0
  GeodesicUmbilical,      // ambient dim > 4: sigma = 0
  NonGeodesicUmbilical,   // ambient dim > 4: sigma != 0
};

inline std::string to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::TotallyGeodesicPlane: return "TotallyGeodesicPlane";
    case SurfaceKind::EquidistantSurface: return "EquidistantSurface";
    case SurfaceKind::Horosphere: return "Horosphere";
    case SurfaceKind::GeodesicSphereH3: return "GeodesicSphereH3";
    case SurfaceKind::TotallyGeodesicSphere: return "TotallyGeodesicSphere";
    case SurfaceKind::GeodesicSphereS3: return "GeodesicSphereS3";
    case SurfaceKind::GeodesicUmbilical: return "GeodesicUmbilical";
    case SurfaceKind::NonGeodesicUmbilical: return "NonGeodesicUmbilical";
  }
  return "?";
}

// U_{a,sigma} = { p on the hyperquadric : <p,a> = sigma }, stored with a
// normalized so that <a,a> = epsilon in {-1, 0, +1}. For epsilon = 0 the
// pair (a, sigma) is rescaled so sigma = -1 (the horosphere convention).
struct UmbilicalSurface {
  Vec a;
  double sigma = 0.0;
  int c = -1;
  double epsilon = 1.0;
  SurfaceKind kind = SurfaceKind::TotallyGeodesicPlane;
  double H = 0.0;       // mean curvature, sigma / sqrt(epsilon - c sigma^2)
  double lambda = 1.0;  // 1 / sqrt(epsilon - c sigma^2)
  double K_ext = 0.0;   // sigma^2 / (epsilon - c sigma^2) = H^2
  double K = 0.0;       // intrinsic curvature, K_ext + c
};

inline UmbilicalSurface classify_surface(Vec a, double sigma, int c) {
  if (c == 0)
    throw std::invalid_argument("classify_surface: c must be -1 or +1");
  if (a.squaredNorm() == 0.0)
    throw std::invalid_argument("classify_surface: a must be nonzero");

  const double e = inner(a, a, c);
  double eps;
  if (std::abs(e) < 1e-12) {
    eps = 0.0;
    // Null a: rescale so sigma = -1.
    if (sigma == 0.0)
      throw std::invalid_argument("classify_surface: null a requires sigma != 0");
    a *= -1.0 / sigma;
    sigma = -1.0;
  } else {
    const double scale = 1.0 / std::sqrt(std::abs(e));
    a *= scale;
    sigma *= scale;
    eps = e > 0.0 ? 1.0 : -1.0;
  }

  if (c == 1 && (eps != 1.0 || std::abs(sigma) >= 1.0))
    throw std::invalid_argument("classify_surface: S case needs eps=+1, |sigma|<1");
  if (c == -1 && eps == -1.0 && std::abs(sigma) <= 1.0)
    throw std::invalid_argument("classify_surface: timelike a needs |sigma|>1");

  UmbilicalSurface S;
  S.a = std::move(a);
  S.sigma = sigma;
  S.c = c;
  S.epsilon = eps;
  // <a - c sigma p, a - c sigma p> = eps - c sigma^2; > 0 in every valid case.
  const double denom = eps - c * sigma * sigma;
  S.lambda = 1.0 / std::sqrt(denom);
  S.H = S.lambda * sigma;
  S.K_ext = sigma * sigma / denom;
  S.K = S.K_ext + c;

  if (S.a.size() > 4) {
    S.kind = sigma == 0.0 ? SurfaceKind::GeodesicUmbilical
                          : SurfaceKind::NonGeodesicUmbilical;
  } else if (c == 1) {
    S.kind = sigma == 0.0 ? SurfaceKind::TotallyGeodesicSphere
                          : SurfaceKind::GeodesicSphereS3;
  } else if (eps == 0.0) {
    S.kind = SurfaceKind::Horosphere;
  } else if (eps == -1.0) {
    S.kind = SurfaceKind::GeodesicSphereH3;
  } else {
    S.kind = sigma == 0.0 ? SurfaceKind::TotallyGeodesicPlane
                          : SurfaceKind::EquidistantSurface;
  }
  return S;
}

// <p,a> - sigma; zero iff p lies on S.
inline double membership_residual(const UmbilicalSurface& S, const Vec& p) {
  return inner(p, S.a, S.c) - S.sigma;
}

// Unit normal of U_{a,sigma} at p:
//   c = -1:  xi = -lambda (a + sigma p)
//   c = +1:  xi = (a - sigma p) / sqrt(1 - sigma^2)
// Either way <xi,xi> = 1, <xi,p> = 0 and the shape operator is H * id with
// H = lambda sigma (up to the sign of xi).
inline Vec surface_normal(const UmbilicalSurface& S, const Vec& p) {
  if (std::abs(membership_residual(S, p)) > 1e-6)
    throw std::domain_error("surface_normal: point not on surface");
  if (S.c == -1) return -S.lambda * (S.a + S.sigma * p);
  return S.lambda * (S.a - S.sigma * p);
}

// Chart Phi onto the upper half space {z > 0}:
//   Phi(x1,x2,x3,x4) = (x1, x2, 1) / (x3 + x4).
struct HalfSpacePoint {
  double x, y, z;
};

inline HalfSpacePoint to_upper_halfspace(const Vec& p) {
  if (p.size() != 4)
    throw std::invalid_argument("to_upper_halfspace: expected R^4 point");
  const double w = p[2] + p[3];
  if (w <= 0.0) throw std::domain_error("to_upper_halfspace: x3 + x4 <= 0");
  return {p[0] / w, p[1] / w, 1.0 / w};
}

inline Vec from_upper_halfspace(double x, double y, double z) {
  if (z <= 0.0) throw std::invalid_argument("from_upper_halfspace: z <= 0");
  // w = x3 + x4 = 1/z; <p,p> = -1 fixes x3 - x4.
  const double w = 1.0 / z;
  const double x1 = x * w, x2 = y * w;
  const double diff = (-1.0 - x1 * x1 - x2 * x2) / w;
  Vec p(4);
  p << x1, x2, (w + diff) / 2.0, (w - diff) / 2.0;
  return p;
}

// A metric-preserving linear map of R^dim: orthogonal for c = +1 / 0,
// orthochronous Lorentz for c = -1 (upper sheet maps to upper sheet).
// Built from exact plane rotations and boosts; seed 0 gives the identity.
inline Mat random_isometry(int c, std::uint64_t seed, int dim = 4) {
  Mat M = Mat::Identity(dim, dim);
  if (seed == 0) return M;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  // Moderate rapidity: composed boosts stay well conditioned, so curvature
  // extraction from transformed curves keeps full finite-difference accuracy.
  std::uniform_real_distribution<double> rapidity(-0.3, 0.3);
  std::uniform_int_distribution<int> pick(0, dim - 2);

  const int spatial = (c == -1) ? dim - 1 : dim;
  for (int k = 0; k < 2 * dim; ++k) {
    int i = pick(rng) % spatial;
    int j = pick(rng) % spatial;
    if (i == j) j = (j + 1) % spatial;
    Mat G = Mat::Identity(dim, dim);
    const double t = angle(rng);
    G(i, i) = std::cos(t);
    G(j, j) = std::cos(t);
    G(i, j) = -std::sin(t);
    G(j, i) = std::sin(t);
    M = G * M;
    if (c == -1) {
      const int b = pick(rng) % spatial;
      Mat Bo = Mat::Identity(dim, dim);
      const double r = rapidity(rng);
      Bo(b, b) = std::cosh(r);
      Bo(dim - 1, dim - 1) = std::cosh(r);
      Bo(b, dim - 1) = std::sinh(r);
      Bo(dim - 1, b) = std::sinh(r);
      M = Bo * M;
    }
  }
  return M;
}

}  // namespace umbilic
