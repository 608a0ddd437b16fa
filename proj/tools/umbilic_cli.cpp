// Command-line surface over the umbilic library: analyze curve files,
// run umbilical-surface detection, synthesize constant-torsion curves,
// convert between the hyperquadric and upper-half-space models, and run
// the acceptance selftest.

#include "umbilic/io.hpp"
#include "umbilic/selftest.hpp"
#include "umbilic/synth.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace umbilic;

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

void write_or_print(const std::string& path, const std::function<void(std::ostream&)>& w) {
  if (path.empty()) {
    w(std::cout);
  } else {
    auto f = open_out(path);
    w(f);
  }
}

int cmd_analyze(const std::string& input, const std::string& output,
                const std::string& mode) {
  const SampledCurve curve = io::read_curve_csv(input);
  if (mode == "rm") {
    const RMData rm = rm_apparatus(curve);
    write_or_print(output, [&](std::ostream& os) {
      os << "s";
      for (size_t i = 0; i < rm.kappas[0].size(); ++i) os << ",kappa_" << i + 1;
      os << "\n";
      for (int k = 0; k < rm.size(); ++k) {
        os << io::fmt(rm.s[k]);
        for (double ki : rm.kappas[k]) os << "," << io::fmt(ki);
        os << "\n";
      }
    });
    std::cerr << "rm: " << rm.size() << " samples, " << rm.kappas[0].size()
              << " normal curvatures\n";
    return 0;
  }
  const FrenetData f = frenet_apparatus(curve);
  write_or_print(output, [&](std::ostream& os) { io::write_frenet_csv(os, f); });
  double kmin = f.kappa[0], kmax = f.kappa[0], tmin = f.tau[0], tmax = f.tau[0];
  for (int k = 0; k < f.size(); ++k) {
    kmin = std::min(kmin, f.kappa[k]);
    kmax = std::max(kmax, f.kappa[k]);
    tmin = std::min(tmin, f.tau[k]);
    tmax = std::max(tmax, f.tau[k]);
  }
  std::cerr << "frenet: " << f.size() << " samples, kappa in [" << io::fmt(kmin) << ", "
            << io::fmt(kmax) << "], tau in [" << io::fmt(tmin) << ", " << io::fmt(tmax)
            << "]\n";
  return 0;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::TotallyGeodesic:
    case Verdict::UmbilicalNonGeodesic:
      return 0;
    case Verdict::NotUmbilical:
      return 1;
    case Verdict::Inconclusive:
      return 2;
  }
  return 3;
}

int cmd_detect(const std::string& input, const std::string& output,
               const std::string& mode, const DetectOptions& opt) {
  const SampledCurve curve = io::read_curve_csv(input);
  if (mode == "rm") {
    const RMRelation rel = detect_rm_linear_relation(rm_apparatus(curve));
    write_or_print(output,
                   [&](std::ostream& os) { os << io::relation_to_json(rel).dump(2) << "\n"; });
    return rel.ambiguous ? 2 : 0;
  }
  const DetectionReport rep = detect(curve, opt);
  write_or_print(output,
                 [&](std::ostream& os) { os << io::report_to_json(rep).dump(2) << "\n"; });
  return verdict_exit(rep.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant-torsion curves on totally umbilical surfaces of H^3 / S^3: "
               "synthesis, curvature analysis and surface detection"};
  app.require_subcommand(1);

  std::string input, output, mode = "frenet";

  auto* analyze = app.add_subcommand("analyze", "Frenet / RM curvature data for a curve file");
  analyze->add_option("--input,-i", input, "curve CSV")->required();
  analyze->add_option("--output,-o", output, "output CSV (default stdout)");
  analyze->add_option("--mode", mode, "frenet|rm")->check(CLI::IsMember({"frenet", "rm"}));

  umbilic::DetectOptions opt;
  auto* det = app.add_subcommand("detect", "Detect the umbilical surface containing a curve");
  det->add_option("--input,-i", input, "curve CSV")->required();
  det->add_option("--output,-o", output, "report JSON (default stdout)");
  det->add_option("--mode", mode, "frenet|rm")->check(CLI::IsMember({"frenet", "rm"}));
  det->add_option("--tau-zero-tol", opt.tau_zero_tol, "tau = 0 branch threshold");
  det->add_option("--c-spread-tol", opt.C_spread_tol, "relative C spread tolerance");
  det->add_option("--horosphere-band", opt.horosphere_band, "|C-1| horosphere band");
  det->add_option("--kappa-min", opt.kappa_min, "minimum usable kappa");
  det->add_option("--kappa-prime-min", opt.kappa_prime_min,
                  "kappa' aggregation threshold");
  det->add_option("--fourth-order-ratio", opt.fourth_order_ratio,
                  "fourth-order rejection ratio");

  std::string surface = "horosphere", halfspace_out;
  double tau = 1.0, s0 = M_PI / 2.0, s_lo = 0.15 * M_PI, s_hi = 0.85 * M_PI, ds = 1e-3;
  double x1 = 0.0, x2 = 0.0;
  double phi = 0.0, theta = 0.0, dphi = 1.0 / std::sqrt(3.0), dtheta = 1.0;
  double sigma = 0.5, epsilon = 1.0, phase = 0.0, kg_sign = 1.0;
  bool mirror = false;
  std::uint64_t seed = 0;
  auto* synth = app.add_subcommand("synthesize", "Synthesize a constant-torsion curve");
  synth->add_option("--surface", surface, "horosphere|s3-sphere|umbilical")
      ->check(CLI::IsMember({"horosphere", "s3-sphere", "umbilical"}));
  synth->add_option("--tau", tau, "constant torsion");
  synth->add_option("--s0", s0, "initial arc length");
  synth->add_option("--s-lo", s_lo, "lower end of the s range");
  synth->add_option("--s-hi", s_hi, "upper end of the s range");
  synth->add_option("--ds", ds, "arc-length step");
  synth->add_option("--x1", x1, "horosphere: x1(s0)");
  synth->add_option("--x2", x2, "horosphere: x2(s0)");
  synth->add_option("--phi", phi, "s3-sphere: phi(s0)");
  synth->add_option("--theta", theta, "s3-sphere: theta(s0)");
  synth->add_option("--dphi", dphi, "s3-sphere: phi'(s0)");
  synth->add_option("--dtheta", dtheta, "s3-sphere: theta'(s0)");
  synth->add_option("--sigma", sigma, "surface parameter sigma");
  synth->add_option("--epsilon", epsilon, "umbilical (c=-1): sign of <a,a>");
  synth->add_option("--phase", phase, "umbilical: phase of the curvature law");
  synth->add_option("--kg-sign", kg_sign, "sign of the geodesic curvature branch");
  synth->add_flag("--mirror", mirror, "horosphere: mirrored theta branch");
  synth->add_option("--seed", seed, "apply a seeded isometry (0 = identity)");
  synth->add_option("--output,-o", output, "curve CSV (default stdout)");
  synth->add_option("--upper-halfspace", halfspace_out,
                    "also write the upper-half-space CSV here (c = -1 only)");

  std::string to = "halfspace";
  auto* conv = app.add_subcommand("convert",
                                  "Convert between hyperquadric and upper-half-space CSV");
  conv->add_option("--input,-i", input, "input CSV")->required();
  conv->add_option("--output,-o", output, "output CSV (default stdout)");
  conv->add_option("--to", to, "halfspace|hyperquadric")
      ->check(CLI::IsMember({"halfspace", "hyperquadric"}));

  double selftest_ds = 1e-3;
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("--ds", selftest_ds, "arc-length step for the suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(input, output, mode);
    if (app.got_subcommand(det)) return cmd_detect(input, output, mode, opt);
    if (app.got_subcommand(synth)) {
      using namespace umbilic;
      SampledCurve curve;
      if (surface == "horosphere") {
        curve = synthesize_horosphere(tau, s0, x1, x2, s_lo, s_hi, ds, mirror);
      } else if (surface == "s3-sphere") {
        curve = synthesize_geodesic_sphere_s3(tau, s0, phi, theta, dphi, dtheta, s_lo,
                                              s_hi, ds, sigma, kg_sign);
      } else {
        Vec a = Vec::Zero(4);
        if (epsilon > 0.0)
          a[0] = 1.0;
        else if (epsilon == 0.0) {
          a[2] = -1.0;
          a[3] = 1.0;
        } else
          a[3] = -1.0;
        const auto S = classify_surface(a, sigma, -1);
        curve = synthesize_umbilical(S, tau, s0, s_lo, s_hi, ds, phase, kg_sign);
      }
      if (seed != 0) curve = curve.transformed(random_isometry(curve.c, seed, curve.dim));
      write_or_print(output, [&](std::ostream& os) { io::write_curve_csv(os, curve); });
      if (!halfspace_out.empty()) {
        auto f = open_out(halfspace_out);
        io::write_halfspace_csv(f, curve);
      }
      return 0;
    }
    if (app.got_subcommand(conv)) {
      using namespace umbilic;
      if (to == "halfspace") {
        const SampledCurve curve = io::read_curve_csv(input);
        write_or_print(output, [&](std::ostream& os) { io::write_halfspace_csv(os, curve); });
      } else {
        std::ifstream f(input);
        if (!f) throw std::runtime_error("cannot open: " + input);
        std::string line;
        if (!std::getline(f, line) || line.rfind("s,x,y,z", 0) != 0)
          throw io::ParseError(input + ":1: expected header 's,x,y,z'");
        SampledCurve curve;
        curve.c = -1;
        curve.dim = 4;
        int lineno = 1;
        double prev_s = 0.0;
        while (std::getline(f, line)) {
          ++lineno;
          if (line.empty()) continue;
          double s, x, y, z;
          if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &s, &x, &y, &z) != 4)
            throw io::ParseError(input + ":" + std::to_string(lineno) + ": bad row");
          if (curve.size() == 1) curve.ds = s - prev_s;
          prev_s = s;
          curve.s.push_back(s);
          curve.p.push_back(from_upper_halfspace(x, y, z));
        }
        write_or_print(output, [&](std::ostream& os) { io::write_curve_csv(os, curve); });
      }
      return 0;
    }
    if (app.got_subcommand(self)) {
      const auto results = umbilic::selftest::run_acceptance(selftest_ds, &std::cout);
      for (const auto& r : results)
        if (!r.pass) return 1;
      return 0;
    }
  } catch (const umbilic::io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
