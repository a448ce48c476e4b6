#pragma once

#include <optional>

#include "siconic/cpoly.hpp"

namespace siconic {

/// Conic foci. Both must stay off the unit circle or the family degenerates.
struct FociPair {
  Complex a, b;
};

/// Unit-modulus family parameter, stored by angle so |lambda| = 1 holds by
/// construction instead of by rounding.
struct UnimodularParam {
  double theta = 0.0;
  Complex lambda() const { return std::polar(1.0, theta); }
};

inline void check_foci(const FociPair& f, const Tolerances& tol = {}) {
  if (!is_finite(f.a) || !is_finite(f.b)) raise(Errc::non_finite, "foci must be finite");
  if (std::abs(std::abs(f.a) - 1.0) <= tol.foci_circle) {
    raise(Errc::focus_on_circle, "focus a lies on the unit circle: the family degenerates");
  }
  if (std::abs(std::abs(f.b) - 1.0) <= tol.foci_circle) {
    raise(Errc::focus_on_circle, "focus b lies on the unit circle: the family degenerates");
  }
}

/// P(z) = z (z - a)(z - b) - lambda (1 - conj(a) z)(1 - conj(b) z), expanded:
///   c3 = 1
///   c2 = -(a + b) - lambda conj(a) conj(b)
///   c1 = a b + lambda (conj(a) + conj(b))
///   c0 = -lambda
inline CubicPoly build_p_lambda(const FociPair& f, UnimodularParam lam,
                                const Tolerances& tol = {}) {
  check_foci(f, tol);
  const Complex a = f.a;
  const Complex b = f.b;
  const Complex L = lam.lambda();
  return CubicPoly{{-L, a * b + L * (std::conj(a) + std::conj(b)),
                    -(a + b) - L * std::conj(a) * std::conj(b), Complex(1.0)}};
}

/// Detects the coefficient symmetry c_k = mu conj(c_{3-k}) with |mu| = 1.
/// mu is recovered from the outer pair (requires |c0| > tol, else
/// Errc::zero_coefficient) and verified on every pair. Returns nullopt when
/// the symmetry fails. For build_p_lambda output, mu == -lambda.
inline std::optional<Complex> check_self_inversive(const CubicPoly& p, double tol = 1e-12) {
  if (std::abs(p.c[0]) <= tol) {
    raise(Errc::zero_coefficient, "check_self_inversive: |c0| too small to recover mu");
  }
  const Complex mu = p.c[3] / std::conj(p.c[0]);
  if (std::abs(std::abs(mu) - 1.0) > tol) return std::nullopt;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(p.c[k] - mu * std::conj(p.c[3 - k])) > tol) return std::nullopt;
  }
  return mu;
}

struct CircleCheck {
  bool all_on_circle;
  std::array<double, 3> residuals;  ///< ||z_k| - 1| per root, input order
};

inline CircleCheck roots_on_circle(const std::array<Complex, 3>& roots, double tol) {
  CircleCheck out{true, {}};
  for (int k = 0; k < 3; ++k) {
    out.residuals[k] = std::abs(std::abs(roots[k]) - 1.0);
    if (out.residuals[k] > tol) out.all_on_circle = false;
  }
  return out;
}

/// B(z) = z ((z - a)/(1 - conj(a) z)) ((z - b)/(1 - conj(b) z)).
/// B(z) = lambda exactly at the roots of P_lambda away from the poles, and
/// |B| = 1 on the unit circle whatever the foci.
inline Complex blaschke_eval(Complex z, const FociPair& f, const Tolerances& tol = {}) {
  if (!is_finite(z)) raise(Errc::non_finite, "blaschke_eval: non-finite argument");
  const Complex da = 1.0 - std::conj(f.a) * z;
  const Complex db = 1.0 - std::conj(f.b) * z;
  if (std::abs(da) <= tol.pole_guard || std::abs(db) <= tol.pole_guard) {
    raise(Errc::pole_proximity, "blaschke_eval: z within 1e-12 of a pole");
  }
  return z * ((z - f.a) / da) * ((z - f.b) / db);
}

}  // namespace siconic
