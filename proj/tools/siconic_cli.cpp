// Command-line front end: solve one parameter, render an envelope figure,
// scan good-parameter arcs, run randomized verification, describe the conic.
//
// Exit codes: 0 success, 1 bad input or I/O failure, 2 empty or bad-lambda
// result, 3 invariant violation (verify).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "siconic/siconic.hpp"

namespace {

using nlohmann::json;
using namespace siconic;

constexpr double two_pi = 2.0 * std::numbers::pi;

json jc(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json jsolution(const TriangleSolution& s) {
  json roots = json::array();
  json weights = json::array();
  json tangency = json::array();
  json second = json::array();
  for (int k = 0; k < 3; ++k) {
    roots.push_back(jc(s.roots[k]));
    weights.push_back(s.weights[k]);
    tangency.push_back(jc(s.tangency[k]));
    second.push_back(s.reports[k].second_order_ok);
  }
  return json{{"good", true},
              {"theta", s.theta},
              {"lambda", jc(std::polar(1.0, s.theta))},
              {"roots", roots},
              {"weights", weights},
              {"tangency", tangency},
              {"second_order_ok", second},
              {"residuals",
               {{"max_circle", s.residuals.max_circle},
                {"max_conic", s.residuals.max_conic},
                {"max_angle", s.residuals.max_angle},
                {"weight_sum", s.residuals.weight_sum}}}};
}

struct Options {
  std::string a_text, b_text;
  double theta = 0.0;
  double lambda_deg = 0.0;
  bool theta_set = false;
  bool lambda_deg_set = false;
  int count = 60;
  std::string out;
  int n_samples = 2048;
  double refine_tol = 1e-10;
  int samples = 200;
  std::uint64_t seed = 20260815;
  std::string config_path;
};

Tolerances resolve_tolerances(const Options& opt) {
  if (opt.config_path.empty()) return {};
  return load_tolerances_file(opt.config_path);
}

FociPair resolve_foci(const Options& opt) {
  return {parse_complex(opt.a_text), parse_complex(opt.b_text)};
}

double resolve_theta(const Options& opt) {
  if (opt.theta_set == opt.lambda_deg_set) {
    raise(Errc::bad_input, "exactly one of --theta / --lambda-deg is required");
  }
  return opt.theta_set ? opt.theta : wrap_angle(opt.lambda_deg * std::numbers::pi / 180.0);
}

int cmd_solve(const Options& opt) {
  const Tolerances tol = resolve_tolerances(opt);
  const double theta = resolve_theta(opt);
  const SolveResult res = solve_triangle(resolve_foci(opt), UnimodularParam{theta}, tol);
  if (!res.ok()) {
    const json out{{"good", false}, {"reason", to_string(res.reason)}, {"theta", theta}};
    std::cout << out.dump(2) << "\n";
    return 2;
  }
  std::cout << jsolution(*res.solution).dump(2) << "\n";
  return 0;
}

int cmd_conic(const Options& opt) {
  const ConicDescriptor d = conic_descriptor(resolve_foci(opt), resolve_tolerances(opt));
  const json out{{"kind", to_string(d.kind)},
                 {"s", d.s},
                 {"eccentricity", d.eccentricity},
                 {"center", jc(d.center)},
                 {"linear_eccentricity", d.linear_ecc},
                 {"semi_major", d.semi_major},
                 {"semi_secondary", d.semi_secondary},
                 {"rotation", d.rotation},
                 {"focus_a", jc(d.focus_a)},
                 {"focus_b", jc(d.focus_b)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_good_lambda(const Options& opt) {
  const Tolerances tol = resolve_tolerances(opt);
  const auto arcs =
      scan_good_intervals(resolve_foci(opt), opt.n_samples, opt.refine_tol, tol);
  json out = json::array();
  for (const auto& arc : arcs) {
    json j{{"theta_lo", arc.theta_lo}, {"theta_hi", arc.theta_hi}};
    if (arc.boundary_lo) {
      j["boundary_lo"] = json{{"theta_star", arc.boundary_lo->theta_star},
                              {"double_root", jc(arc.boundary_lo->double_root)}};
    }
    if (arc.boundary_hi) {
      j["boundary_hi"] = json{{"theta_star", arc.boundary_hi->theta_star},
                              {"double_root", jc(arc.boundary_hi->double_root)}};
    }
    out.push_back(j);
  }
  std::cout << out.dump(2) << "\n";
  return arcs.empty() ? 2 : 0;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) raise(Errc::bad_input, "cannot open '" + path + "' for writing");
  f << content;
  if (!f) raise(Errc::bad_input, "write to '" + path + "' failed");
}

std::string csv_sibling(const std::string& svg_path) {
  const std::size_t dot = svg_path.find_last_of('.');
  const std::size_t slash = svg_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return svg_path + ".csv";
  }
  return svg_path.substr(0, dot) + ".csv";
}

int cmd_envelope(const Options& opt) {
  const Tolerances tol = resolve_tolerances(opt);
  const FociPair foci = resolve_foci(opt);
  if (opt.count < 1) raise(Errc::bad_input, "--count must be >= 1");
  if (opt.out.empty()) raise(Errc::bad_input, "--out is required");

  const auto arcs = scan_good_intervals(foci, opt.n_samples, opt.refine_tol, tol);
  if (arcs.empty()) {
    std::cerr << "no good lambda: every parameter puts a root off the circle\n";
    return 2;
  }
  const auto thetas = spread_thetas(arcs, opt.count, 0.01);

  Scene scene;
  scene.descriptor = conic_descriptor(foci, tol);
  for (const double th : thetas) {
    const SolveResult res = solve_triangle(foci, UnimodularParam{wrap_angle(th)}, tol);
    if (!res.ok()) {
      std::cerr << "sampled theta " << th << " classified bad after interval scan\n";
      return 1;
    }
    scene.solutions.push_back(*res.solution);
  }

  const double span = std::max({std::abs(foci.a.real()), std::abs(foci.a.imag()),
                                std::abs(foci.b.real()), std::abs(foci.b.imag())});
  scene.view.half_width = std::max(1.6, 1.2 * span);
  const bool both_inside = std::abs(foci.a) < 1.0 && std::abs(foci.b) < 1.0;
  scene.style.extend_sides = both_inside ? 0.0 : 3.0;

  write_file(opt.out, render_svg(scene));
  write_file(csv_sibling(opt.out), export_csv(scene.solutions));
  std::cout << "wrote " << opt.out << " and " << csv_sibling(opt.out) << " ("
            << scene.solutions.size() << " triangles)\n";
  return 0;
}

// -- verify ------------------------------------------------------------------

struct Gauge {
  std::string name;
  double worst = 0.0;
  double limit = 0.0;
  bool failed = false;
};

class Report {
 public:
  void check(const std::string& name, double value, double limit) {
    Gauge& g = find(name, limit);
    g.worst = std::max(g.worst, value);
    if (value > limit) g.failed = true;
  }

  void flag(const std::string& name, bool ok) {
    Gauge& g = find(name, 0.0);
    if (!ok) {
      g.worst += 1.0;  // counts violations
      g.failed = true;
    }
  }

  int print() const {
    bool any = false;
    for (const Gauge& g : gauges_) {
      if (g.limit > 0.0) {
        std::printf("%-34s worst %.3e  limit %.0e  %s\n", g.name.c_str(), g.worst, g.limit,
                    g.failed ? "VIOLATION" : "ok");
      } else {
        std::printf("%-34s violations %.0f  %s\n", g.name.c_str(), g.worst,
                    g.failed ? "VIOLATION" : "ok");
      }
      any = any || g.failed;
    }
    return any ? 3 : 0;
  }

 private:
  Gauge& find(const std::string& name, double limit) {
    for (Gauge& g : gauges_) {
      if (g.name == name) return g;
    }
    gauges_.push_back(Gauge{name, 0.0, limit, false});
    return gauges_.back();
  }

  std::vector<Gauge> gauges_;
};

double focal_identity_residual(const FociPair& f) {
  const double s2 = std::norm(1.0 - std::conj(f.a) * f.b);
  const double lhs = s2 - std::norm(f.a - f.b);
  const double rhs = (1.0 - std::norm(f.a)) * (1.0 - std::norm(f.b));
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// invariants checked on every built polynomial, good parameter or not
void universal_checks(Report& rep, const FociPair& f, double theta, const Tolerances& tol) {
  const CubicPoly p = build_p_lambda(f, UnimodularParam{theta}, tol);
  const auto roots = cubic_roots(p, tol);
  const Complex lambda = std::polar(1.0, theta);

  double worst_res = 0.0;
  for (const Complex& z : roots) worst_res = std::max(worst_res, std::abs(poly_eval(p, z)));
  rep.check("root residual (scaled)", worst_res / p.max_coeff_magnitude(), 1e-10);

  const auto mu = check_self_inversive(p, tol.self_inversive);
  rep.flag("self-inversive symmetry", mu.has_value());
  if (mu) rep.check("mu vs -lambda", std::abs(*mu + lambda), 1e-12);

  double best_circle = 1e300;
  for (const Complex& z : roots) best_circle = std::min(best_circle, std::abs(std::abs(z) - 1.0));
  rep.check("odd-degree unimodular root", best_circle, 1e-8);

  for (const Complex& z : roots) {
    const double off = std::abs(std::abs(z) - 1.0);
    if (off <= tol.circle) {
      rep.check("Blaschke value at root", std::abs(blaschke_eval(z, f, tol) - lambda), 1e-9);
    }
    if (off > 1e-6) {  // reflection partner must also be a root
      const Complex mirror = 1.0 / std::conj(z);
      double nearest = 1e300;
      for (const Complex& w : roots) nearest = std::min(nearest, std::abs(w - mirror));
      rep.check("reflection pairing", nearest, 1e-8);
    }
  }
  rep.check("focal identity", focal_identity_residual(f), 1e-12);
}

// invariants of a full good-parameter solution
void pipeline_checks(Report& rep, const FociPair& f, const TriangleSolution& s,
                     const ConicDescriptor& conic, const Tolerances& tol) {
  const CubicPoly p = build_p_lambda(f, UnimodularParam{s.theta}, tol);
  rep.check("roots on circle", s.residuals.max_circle, tol.circle);
  rep.check("weight sum", s.residuals.weight_sum, 1e-10);
  rep.check("conic membership", s.residuals.max_conic, 1e-8);
  rep.check("reflection angle", s.residuals.max_angle, 1e-6);

  double worst_imag = 0.0, worst_cross = 0.0, worst_eq9 = 0.0, worst_cross_prod = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Complex z = s.roots[k];
    const Complex raw = (z - f.a) * (z - f.b) / poly_eval_derivative(p, z);
    worst_imag = std::max(worst_imag, std::abs(raw.imag()));
    const double closed = 1.0 / (1.0 + (1.0 - std::norm(f.a)) / std::norm(z - f.a) +
                                 (1.0 - std::norm(f.b)) / std::norm(z - f.b));
    worst_cross = std::max(worst_cross, std::abs(raw.real() - closed));

    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    for (const Complex& focus : {f.a, f.b}) {
      const Complex rhs = s.weights[k] / (1.0 - s.weights[k]) * (focus - s.roots[i]) *
                          (focus - s.roots[j]) / (focus - s.roots[k]);
      worst_eq9 = std::max(worst_eq9, std::abs((s.tangency[k] - focus) - rhs));
    }
    const Complex side = s.roots[j] - s.roots[i];
    const Complex leg = s.tangency[k] - s.roots[i];
    worst_cross_prod = std::max(
        worst_cross_prod,
        std::abs(leg.real() * side.imag() - leg.imag() * side.real()) / std::abs(side));
  }
  rep.check("weight imaginary part", worst_imag, tol.weight_imag);
  rep.check("weight two-form agreement", worst_cross, 1e-8);
  rep.check("tangency factorization", worst_eq9, 1e-8);
  rep.check("tangency collinearity", worst_cross_prod, 1e-10);

  const double prod = s.weights[0] * s.weights[1] * s.weights[2];
  rep.flag("sign rule vs conic kind",
           conic.kind == ConicKind::hyperbola ? prod < 0.0 : prod > 0.0);
}

int cmd_verify(const Options& opt, bool have_foci) {
  const Tolerances tol = resolve_tolerances(opt);
  UniformRng rng(opt.seed);
  Report rep;

  if (have_foci) {
    const FociPair foci = resolve_foci(opt);
    const auto arcs = scan_good_intervals(foci, 2048, 1e-10, tol);
    std::printf("foci a=%s b=%s  seed %llu  samples %d  arcs %zu\n", opt.a_text.c_str(),
                opt.b_text.c_str(), static_cast<unsigned long long>(opt.seed), opt.samples,
                arcs.size());
    if (arcs.empty()) {
      std::printf("no good lambda for these foci\n");
      return 2;
    }
    const ConicDescriptor conic = conic_descriptor(foci, tol);
    double total = 0.0;
    for (const auto& arc : arcs) total += arc.theta_hi - arc.theta_lo;
    for (int i = 0; i < opt.samples; ++i) {
      double u = rng.uniform() * total;
      double theta = 0.5 * (arcs.back().theta_lo + arcs.back().theta_hi);
      for (const auto& arc : arcs) {
        const double w = arc.theta_hi - arc.theta_lo;
        if (u <= w) {
          const double inset = 0.0005 * w;  // keeps weights bounded near boundaries
          theta = arc.theta_lo + inset + (w - 2.0 * inset) * (u / w);
          break;
        }
        u -= w;
      }
      theta = wrap_angle(theta);
      universal_checks(rep, foci, theta, tol);
      const SolveResult res = solve_triangle(foci, UnimodularParam{theta}, tol);
      rep.flag("scan/solve consistency", res.ok());
      if (res.ok()) pipeline_checks(rep, foci, *res.solution, conic, tol);
    }
  } else {
    std::printf("random foci  seed %llu  samples %d\n",
                static_cast<unsigned long long>(opt.seed), opt.samples);
    for (int i = 0; i < opt.samples; ++i) {
      const FociPair foci{rng.in_disk(3.0, 0.05), rng.in_disk(3.0, 0.05)};
      const double theta = rng.uniform(0.0, two_pi);
      universal_checks(rep, foci, theta, tol);
      const LambdaClass cls = classify_lambda(foci, theta, tol);
      if (cls.good && std::abs(1.0 - std::conj(foci.a) * foci.b) > 1e-6) {
        const SolveResult res = solve_triangle(foci, UnimodularParam{theta}, tol);
        rep.flag("scan/solve consistency", res.ok());
        if (res.ok()) {
          pipeline_checks(rep, foci, *res.solution, conic_descriptor(foci, tol), tol);
        }
      }
    }
  }
  return rep.print();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-inversive cubic triangles and the conic they envelope"};
  app.require_subcommand(1);
  Options opt;

  const auto add_foci = [&](CLI::App* cmd, bool required) {
    auto* oa = cmd->add_option("--a", opt.a_text, "focus a, complex literal like 0.7+1i");
    auto* ob = cmd->add_option("--b", opt.b_text, "focus b, complex literal like 1.5-0.8i");
    if (required) {
      oa->required();
      ob->required();
    }
    cmd->add_option("--config", opt.config_path, "tolerance overrides, key = value per line");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one parameter and print JSON");
  add_foci(solve, true);
  auto* th = solve->add_option("--theta", opt.theta, "parameter angle in radians");
  auto* ld = solve->add_option("--lambda-deg", opt.lambda_deg, "parameter angle in degrees");
  th->excludes(ld);
  ld->excludes(th);

  CLI::App* envelope = app.add_subcommand("envelope", "render SVG + CSV of many triangles");
  add_foci(envelope, true);
  envelope->add_option("--count", opt.count, "number of triangles")->capture_default_str();
  envelope->add_option("--out", opt.out, "output SVG path")->required();

  CLI::App* good = app.add_subcommand("good-lambda", "print good parameter arcs as JSON");
  add_foci(good, true);
  good->add_option("--n-samples", opt.n_samples, "scan grid size")->capture_default_str();
  good->add_option("--refine-tol", opt.refine_tol, "boundary bisection width")
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "run randomized invariant checks");
  add_foci(verify, false);
  verify->add_option("--samples", opt.samples, "number of draws")->capture_default_str();
  verify->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();

  CLI::App* conic = app.add_subcommand("conic", "print the conic descriptor as JSON");
  add_foci(conic, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(solve)) {
      opt.theta_set = th->count() > 0;
      opt.lambda_deg_set = ld->count() > 0;
      return cmd_solve(opt);
    }
    if (app.got_subcommand(envelope)) return cmd_envelope(opt);
    if (app.got_subcommand(good)) return cmd_good_lambda(opt);
    if (app.got_subcommand(verify)) {
      const bool have_a = !opt.a_text.empty();
      const bool have_b = !opt.b_text.empty();
      if (have_a != have_b) raise(siconic::Errc::bad_input, "verify needs both --a and --b or neither");
      return cmd_verify(opt, have_a);
    }
    if (app.got_subcommand(conic)) return cmd_conic(opt);
  } catch (const siconic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
