#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "siconic/siconic.hpp"

// Shared fixtures: the three worked focus pairs, reference values computed
// with an independent eigenvalue-based solver and frozen before the library
// was written, and small utilities for the test binaries.
namespace t {

using siconic::Complex;

inline constexpr double pi = 3.14159265358979323846;

// focus pairs
inline const siconic::FociPair ex1{{0.0, 0.0}, {0.618, 0.0}};        // ellipse, foci inside
inline const siconic::FociPair ex2{{0.7, 1.0}, {1.5, -0.8}};         // ellipse, foci outside
inline const siconic::FociPair ex3{{0.3, -0.3}, {1.2, 0.2}};         // hyperbola, straddling
inline const siconic::FociPair none{{2.0, 2.0}, {-3.0, 1.0}};        // empty good set

// ex1 at theta = 0: roots are {-0.191 +/- i y, 1}; the pair's real parts agree
// only to rounding, so the sorted order within the pair is not pinned
inline constexpr double ex1_pair_im = 0.98159003662425182;
inline constexpr double ex1_m3 = 0.16036943744752333;   // weight at the root 1
inline constexpr double ex1_m12 = 0.41981528127623841;  // weight at each pair root
inline const Complex ex1_zeta12{0.67079450072358926, 0.27132228219281085};

// conic constants
inline constexpr double ex2_s = 2.1922819161777531;
inline constexpr double ex2_ecc = 0.89850285486709691;
inline constexpr double ex3_s = 0.81633326527834205;
inline constexpr double ex3_ecc = 1.2612042873784566;
inline constexpr double ex3_semi_major = 0.40816663263917102;
inline constexpr double ex3_semi_secondary = 0.31368774282716239;
inline constexpr double ex3_linear_ecc = 0.51478150704935;
inline constexpr double ex3_rotation = 0.50709850439233706;

// good-parameter arcs (8192-sample reference scan, 1e-13 bisection)
inline constexpr double ex2_lo = 2.9370232718694;
inline constexpr double ex2_hi = 4.3059937750184;
inline constexpr double ex3_lo = 6.1889808493373;  // arc crosses the 2 pi seam
inline constexpr double ex3_hi = 8.9196210775466;

// double roots and surviving simple roots at the arc boundaries
inline const Complex ex2_w_lo{-0.148421474, 0.988924196};
inline const Complex ex2_w_hi{0.055389724, -0.998464811};
inline const Complex ex2_surv_lo{0.876374932, -0.481629504};
inline const Complex ex2_surv_hi{0.494475573, 0.869191525};
inline const Complex ex3_w_lo{0.829507710623, 0.558495262304};
inline const Complex ex3_w_hi{0.986207960013, -0.165510904798};
inline const Complex ex3_surv_lo{0.287341870927, -0.957828089592};
inline const Complex ex3_surv_hi{-0.985140736596, 0.171749029396};

// expansion of the family polynomial at a = 0.7+1i, b = 1.5-0.8i, lambda = 1
inline const Complex build2_c2{-4.05, 0.74};
inline const Complex build2_c1{4.05, 0.74};

/// Worst per-root distance under the best of the six pairings.
inline double pairing_gap(const std::array<Complex, 3>& u, const std::array<Complex, 3>& v) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  double best = 1e300;
  for (const auto& pm : perms) {
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(u[k] - v[pm[k]]));
    best = std::min(best, worst);
  }
  return best;
}

/// Monic cubic with the given roots.
inline siconic::CubicPoly poly_from_roots(Complex r1, Complex r2, Complex r3) {
  return siconic::CubicPoly{
      {-r1 * r2 * r3, r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3), Complex(1.0)}};
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

/// Runs the CLI binary with the given argument string.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SICONIC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliResult res;
  if (!pipe) return res;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace t
