#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "siconic/error.hpp"
#include "siconic/tolerances.hpp"

namespace siconic {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Degree-3 polynomial c[0] + c[1] z + c[2] z^2 + c[3] z^3.
struct CubicPoly {
  std::array<Complex, 4> c{};

  double max_coeff_magnitude() const {
    return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
  }
};

inline Complex poly_eval(const CubicPoly& p, Complex z) {
  return ((p.c[3] * z + p.c[2]) * z + p.c[1]) * z + p.c[0];
}

/// Coefficients of p', index k holding the z^k coefficient.
inline std::array<Complex, 3> poly_derivative(const CubicPoly& p) {
  return {p.c[1], 2.0 * p.c[2], 3.0 * p.c[3]};
}

inline Complex poly_eval_derivative(const CubicPoly& p, Complex z) {
  return (3.0 * p.c[3] * z + 2.0 * p.c[2]) * z + p.c[1];
}

/// Newton refinement of a root estimate. Stops once the step drops below
/// tol.newton_step or |p(z)| below tol.value_floor, capped at 50 iterations.
/// Returns the current iterate unchanged when |p'| < tol.derivative_guard,
/// so multiple roots are left where they are instead of being thrown away.
inline Complex polish_root(const CubicPoly& p, Complex z0, const Tolerances& tol = {}) {
  Complex z = z0;
  for (int it = 0; it < 50; ++it) {
    const Complex pv = poly_eval(p, z);
    if (std::abs(pv) < tol.value_floor) return z;
    const Complex dp = poly_eval_derivative(p, z);
    if (std::abs(dp) < tol.derivative_guard) return z;
    const Complex step = pv / dp;
    z -= step;
    if (std::abs(step) < tol.newton_step) return z;
  }
  return z;
}

/// All three roots (with multiplicity) of a genuine cubic.
///
/// Durand-Kerner simultaneous iteration on the monic normalization from the
/// usual perturbed starting points, followed by a Newton polish of each root
/// against the original coefficients. Results are sorted by (re, im), so
/// repeated calls on the same input agree bit for bit.
inline std::array<Complex, 3> cubic_roots(const CubicPoly& p, const Tolerances& tol = {}) {
  for (const Complex& ck : p.c) {
    if (!is_finite(ck)) raise(Errc::non_finite, "cubic_roots: non-finite coefficient");
  }
  if (std::abs(p.c[3]) < tol.degree_guard) {
    raise(Errc::degenerate_degree, "cubic_roots: leading coefficient magnitude below 1e-14");
  }

  const std::array<Complex, 3> b{p.c[0] / p.c[3], p.c[1] / p.c[3], p.c[2] / p.c[3]};
  const auto eval_monic = [&](Complex z) { return ((z + b[2]) * z + b[1]) * z + b[0]; };

  // Cauchy bound keeps every root inside |z| <= radius.
  const double radius =
      1.0 + std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[2])});
  const Complex seed(0.4, 0.9);  // non-real, non-symmetric start direction
  std::array<Complex, 3> z{radius * seed, radius * seed * seed, radius * seed * seed * seed};

  for (int it = 0; it < 200; ++it) {
    double worst = 0.0;
    double scale = 1.0;
    for (int k = 0; k < 3; ++k) {
      Complex denom = 1.0;
      for (int j = 0; j < 3; ++j) {
        if (j != k) denom *= z[k] - z[j];
      }
      if (std::abs(denom) == 0.0) {  // coincident iterates: nudge, retry next sweep
        z[k] += 1e-8 * radius * seed;
        worst = radius;
        continue;
      }
      const Complex step = eval_monic(z[k]) / denom;
      z[k] -= step;
      worst = std::max(worst, std::abs(step));
      scale = std::max(scale, std::abs(z[k]));
    }
    if (worst <= 1e-15 * scale) break;
  }

  for (Complex& r : z) r = polish_root(p, r, tol);
  std::sort(z.begin(), z.end(), [](Complex u, Complex v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  return z;
}

}  // namespace siconic
