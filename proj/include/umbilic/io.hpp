#pragma once

// File formats: the curve CSV (header `# model=c<value> dim=<d> ds=<v>`,
// then `s,x1,...,xd` rows at full precision), the per-sample Frenet CSV,
// the upper-half-space plot CSV, and JSON serialization of surfaces and
// detection reports (fixed key order, full precision).

#include "umbilic/detect.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace umbilic {

using ordered_json = nlohmann::ordered_json;

namespace io {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void write_curve_csv(std::ostream& os, const SampledCurve& curve) {
  os << "# model=c" << curve.c << " dim=" << curve.dim << " ds=" << fmt(curve.ds)
     << "\n";
  os << "s";
  for (int j = 1; j <= curve.dim; ++j) os << ",x" << j;
  os << "\n";
  for (int i = 0; i < curve.size(); ++i) {
    os << fmt(curve.s[i]);
    for (int j = 0; j < curve.dim; ++j) os << "," << fmt(curve.p[i][j]);
    os << "\n";
  }
}

inline void write_curve_csv(const std::string& path, const SampledCurve& curve) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_curve_csv(f, curve);
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline SampledCurve read_curve_csv(std::istream& is, const std::string& name = "<input>") {
  SampledCurve curve;
  std::string line;
  int lineno = 0;

  auto fail = [&](const std::string& msg) {
    throw ParseError(name + ":" + std::to_string(lineno) + ": " + msg);
  };

  if (!std::getline(is, line)) fail("empty file");
  ++lineno;
  {
    int c, dim;
    double ds;
    if (std::sscanf(line.c_str(), "# model=c%d dim=%d ds=%lf", &c, &dim, &ds) != 3)
      fail("expected header '# model=c<value> dim=<d> ds=<v>'");
    if (c < -1 || c > 1) fail("model c must be -1, 0 or +1");
    if (dim < 3) fail("dim must be >= 3");
    curve.c = c;
    curve.dim = dim;
    curve.ds = ds;
  }
  if (!std::getline(is, line)) fail("missing column header");
  ++lineno;

  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      double v;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{}) fail("bad number '" + cell + "'");
      row.push_back(v);
    }
    if (static_cast<int>(row.size()) != curve.dim + 1)
      fail("expected " + std::to_string(curve.dim + 1) + " columns, got " +
           std::to_string(row.size()));
    curve.s.push_back(row[0]);
    Vec p(curve.dim);
    for (int j = 0; j < curve.dim; ++j) p[j] = row[j + 1];
    if (curve.c != 0 && !on_hyperquadric(p, curve.c, 1e-6))
      fail("point off the hyperquadric");
    curve.p.push_back(std::move(p));
  }
  if (curve.size() < 2) fail("need at least 2 samples");
  return curve;
}

inline SampledCurve read_curve_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  return read_curve_csv(f, path);
}

inline void write_frenet_csv(std::ostream& os, const FrenetData& f) {
  os << "s,kappa,tau,kappa_prime\n";
  for (int k = 0; k < f.size(); ++k)
    os << fmt(f.s[k]) << "," << fmt(f.kappa[k]) << "," << fmt(f.tau[k]) << ","
       << fmt(f.kappa_prime[k]) << "\n";
}

inline void write_halfspace_csv(std::ostream& os, const SampledCurve& curve) {
  if (curve.c != -1)
    throw std::invalid_argument("upper half-space output requires an H^3 curve");
  os << "s,x,y,z\n";
  for (int i = 0; i < curve.size(); ++i) {
    const auto h = to_upper_halfspace(curve.p[i]);
    os << fmt(curve.s[i]) << "," << fmt(h.x) << "," << fmt(h.y) << "," << fmt(h.z)
       << "\n";
  }
}

inline ordered_json surface_to_json(const UmbilicalSurface& S) {
  ordered_json j;
  j["kind"] = to_string(S.kind);
  j["c"] = S.c;
  j["a"] = std::vector<double>(S.a.data(), S.a.data() + S.a.size());
  j["sigma"] = S.sigma;
  j["epsilon"] = S.epsilon;
  j["H"] = S.H;
  j["lambda"] = S.lambda;
  j["K_ext"] = S.K_ext;
  j["K"] = S.K;
  return j;
}

inline ordered_json report_to_json(const DetectionReport& r) {
  auto num = [](double x) -> ordered_json {
    if (std::isnan(x)) return nullptr;
    return x;
  };
  ordered_json j;
  j["verdict"] = to_string(r.verdict);
  j["c"] = r.c;
  j["C_estimate"] = num(r.C_estimate);
  j["C_spread"] = num(r.C_spread);
  j["H_estimate"] = num(r.H_estimate);
  j["recovered_surface"] =
      r.recovered_surface ? surface_to_json(*r.recovered_surface) : ordered_json(nullptr);
  auto stats = [&num](const std::vector<double>& v) {
    ordered_json s;
    if (v.empty()) {
      s["max_abs"] = nullptr;
      s["count"] = 0;
      return s;
    }
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, std::abs(x));
    s["max_abs"] = num(mx);
    s["count"] = v.size();
    return s;
  };
  j["residual_third_order"] = stats(r.residual_third_order);
  j["residual_fourth_order"] = stats(r.residual_fourth_order);
  j["window"] = {{"s_lo", r.window_lo}, {"s_hi", r.window_hi}};
  j["options"] = {{"tau_zero_tol", r.options.tau_zero_tol},
                  {"C_spread_tol", r.options.C_spread_tol},
                  {"horosphere_band", r.options.horosphere_band},
                  {"kappa_min", r.options.kappa_min},
                  {"kappa_prime_min", r.options.kappa_prime_min},
                  {"fourth_order_ratio", r.options.fourth_order_ratio}};
  return j;
}

inline ordered_json relation_to_json(const RMRelation& rel) {
  ordered_json j;
  j["a"] = std::vector<double>(rel.a.data(), rel.a.data() + rel.a.size());
  j["sigma"] = rel.sigma;
  j["residual"] = rel.residual;
  j["ambiguous"] = rel.ambiguous;
  return j;
}

}  // namespace io
}  // namespace umbilic
