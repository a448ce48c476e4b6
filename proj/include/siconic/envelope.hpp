#pragma once

#include <numbers>
#include <optional>

#include "siconic/inversive.hpp"

namespace siconic {

enum class ConicKind { ellipse, hyperbola, circle };

inline const char* to_string(ConicKind k) {
  switch (k) {
    case ConicKind::ellipse: return "ellipse";
    case ConicKind::hyperbola: return "hyperbola";
    default: return "circle";
  }
}

/// The conic ||z - a| +/- |z - b|| = s with s = |1 - conj(a) b|.
/// Ellipse (sum) when the foci sit on the same side of the unit circle,
/// hyperbola (absolute difference) when they straddle it, circle when a = b.
struct ConicDescriptor {
  Complex focus_a, focus_b;
  double s = 0.0;  ///< focal sum/difference constant
  ConicKind kind = ConicKind::ellipse;
  Complex center;
  double linear_ecc = 0.0;      ///< |a - b| / 2
  double semi_major = 0.0;      ///< s / 2
  double semi_secondary = 0.0;  ///< sqrt(|semi_major^2 - linear_ecc^2|)
  double rotation = 0.0;        ///< major-axis direction, arg(b - a)
  double eccentricity = 0.0;    ///< |b - a| / s
};

inline ConicDescriptor conic_descriptor(const FociPair& f, const Tolerances& tol = {}) {
  check_foci(f, tol);
  ConicDescriptor d;
  d.focus_a = f.a;
  d.focus_b = f.b;
  d.s = std::abs(1.0 - std::conj(f.a) * f.b);
  if (d.s <= 1e-12) {
    raise(Errc::degenerate_conic, "conic_descriptor: foci are mutual reflections in the circle");
  }
  const bool inside_a = std::abs(f.a) < 1.0;
  const bool inside_b = std::abs(f.b) < 1.0;
  d.kind = (f.a == f.b) ? ConicKind::circle
                        : (inside_a == inside_b ? ConicKind::ellipse : ConicKind::hyperbola);
  d.center = 0.5 * (f.a + f.b);
  d.linear_ecc = 0.5 * std::abs(f.a - f.b);
  d.semi_major = 0.5 * d.s;
  d.semi_secondary = std::sqrt(std::abs(d.semi_major * d.semi_major - d.linear_ecc * d.linear_ecc));
  d.rotation = (f.a == f.b) ? 0.0 : std::arg(f.b - f.a);
  d.eccentricity = std::abs(f.b - f.a) / d.s;
  return d;
}

/// Distance of z from satisfying the conic's defining equation (not the
/// geometric point distance). Zero exactly on the curve, grows smoothly off it.
inline double conic_residual(Complex z, const ConicDescriptor& c) {
  const double da = std::abs(z - c.focus_a);
  const double db = std::abs(z - c.focus_b);
  if (c.kind == ConicKind::hyperbola) return std::abs(std::abs(da - db) - c.s);
  return std::abs(da + db - c.s);
}

/// Residues of (z - a)(z - b) / p(z) at the three roots: m_k = (z_k - a)(z_k - b) / p'(z_k).
/// They sum to 1 and are real whenever the roots are unimodular. Each residue is
/// cross-checked against the closed form
///   1/m = 1 + (1 - |a|^2)/|z - a|^2 + (1 - |b|^2)/|z - b|^2,
/// in reciprocal space (the form the identity is stated in), which stays
/// well-conditioned even when a near-collision makes the weights large.
inline std::array<double, 3> compute_weights(const std::array<Complex, 3>& roots,
                                             const FociPair& f, const CubicPoly& p,
                                             const Tolerances& tol = {}) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(roots[i] - roots[j]) <= tol.separation) {
        raise(Errc::root_collision, "compute_weights: root pair closer than 1e-6");
      }
    }
  }
  std::array<double, 3> m{};
  for (int k = 0; k < 3; ++k) {
    const Complex z = roots[k];
    const Complex mk = (z - f.a) * (z - f.b) / poly_eval_derivative(p, z);
    if (!is_finite(mk)) raise(Errc::weight_mismatch, "compute_weights: residue is not finite");
    if (std::abs(mk.imag()) > tol.weight_imag) {
      raise(Errc::non_real_weight, "compute_weights: residue has imaginary part above 1e-9");
    }
    const double inv = 1.0 + (1.0 - std::norm(f.a)) / std::norm(z - f.a) +
                       (1.0 - std::norm(f.b)) / std::norm(z - f.b);
    const double mr = mk.real();
    const bool agree =
        std::abs(mr) >= 1e-3
            ? std::abs(1.0 / mr - inv) <= tol.weight_cross * std::max(1.0, std::abs(inv))
            : std::abs(mr - 1.0 / inv) <= tol.weight_cross;
    if (!agree) {
      raise(Errc::weight_mismatch, "compute_weights: residue disagrees with the closed form");
    }
    m[k] = mr;
  }
  return m;
}

/// Contact points of the inscribed conic with the (extended) triangle sides.
/// zeta_3 = (m1 z2 + m2 z1)/(m1 + m2) lies on the line through z1, z2 and
/// divides it in the ratio m1 : m2 measured from z1; cyclic for the others.
inline std::array<Complex, 3> tangency_points(const std::array<Complex, 3>& z,
                                              const std::array<double, 3>& m,
                                              const Tolerances& tol = {}) {
  const auto point = [&](int i, int j) {
    const double denom = m[i] + m[j];
    if (std::abs(denom) <= tol.weight_pair) {
      raise(Errc::weight_pair_degenerate, "tangency_points: |m_i + m_j| below 1e-10");
    }
    return (m[i] * z[j] + m[j] * z[i]) / denom;
  };
  return {point(1, 2), point(0, 2), point(0, 1)};
}

/// Tangency diagnostics for a contact point zeta on the line through p and q.
struct TangencyReport {
  double angle_residual = 0.0;    ///< reflection-angle sum, distance to {0, +/-pi}
  bool second_order_ok = false;   ///< conic residual scales quadratically along the line
  double scaling_ratio = 0.0;     ///< residual(h) / residual(h/10) at h = 1e-3
  bool branch_matches_weight = false;  ///< 0-branch iff the opposite weight is positive
};

/// Verifies the focal reflection property at zeta: the angle the line makes
/// with the ray to one focus equals the angle with the ray to the other, i.e.
/// arg((zeta - a)/(zeta - p)) + arg((zeta - b)/(zeta - q)) lands on {0, +/-pi}
/// (0 when the contact sits between p and q, +/-pi on the extension). The
/// second-order probe evaluates the conic residual at zeta +/- h d along the
/// line for h = 1e-3 and h = 1e-4: a tangent line scales the residual by
/// ~100 between the two, a transversal line by ~10.
inline TangencyReport tangency_check(Complex zeta, Complex line_p, Complex line_q,
                                     const ConicDescriptor& c, double weight_m,
                                     const Tolerances& tol = {}) {
  if (std::abs(line_q - line_p) <= tol.point_guard) {
    raise(Errc::degenerate_tangency, "tangency_check: line endpoints coincide");
  }
  for (const Complex& ref : {line_p, line_q, c.focus_a, c.focus_b}) {
    if (std::abs(zeta - ref) <= tol.point_guard) {
      raise(Errc::degenerate_tangency,
            "tangency_check: zeta within 1e-10 of a line endpoint or focus");
    }
  }
  constexpr double pi = std::numbers::pi;
  const double sum = std::arg((zeta - c.focus_a) / (zeta - line_p)) +
                     std::arg((zeta - c.focus_b) / (zeta - line_q));
  const double folded = std::abs(std::remainder(sum, 2.0 * pi));  // in [0, pi]
  const bool to_zero = folded < 0.5 * pi;

  const Complex d = (line_q - line_p) / std::abs(line_q - line_p);
  const auto probe = [&](double h) {
    return std::max(conic_residual(zeta + h * d, c), conic_residual(zeta - h * d, c));
  };
  const double h = 1e-3;
  const double ratio = probe(h) / std::max(probe(0.1 * h), 1e-300);

  TangencyReport rep;
  rep.angle_residual = std::min(folded, pi - folded);
  rep.second_order_ok = ratio >= 50.0 && ratio <= 200.0;
  rep.scaling_ratio = ratio;
  rep.branch_matches_weight = to_zero == (weight_m > 0.0);
  return rep;
}

enum class BadLambdaReason { off_circle, root_collision };

inline const char* to_string(BadLambdaReason r) {
  return r == BadLambdaReason::off_circle ? "off_circle" : "root_collision";
}

struct ResidualReport {
  double max_circle = 0.0;   ///< worst ||z_k| - 1|
  double max_conic = 0.0;    ///< worst conic residual over the tangency points
  double max_angle = 0.0;    ///< worst reflection-angle residual
  double weight_sum = 0.0;   ///< |m1 + m2 + m3 - 1|
};

struct TriangleSolution {
  double theta = 0.0;
  std::array<Complex, 3> roots{};     ///< sorted by (re, im)
  std::array<double, 3> weights{};    ///< residue at each root, same order
  std::array<Complex, 3> tangency{};  ///< zeta_k touches the side opposite z_k
  std::array<TangencyReport, 3> reports{};
  ResidualReport residuals{};
};

struct SolveResult {
  std::optional<TriangleSolution> solution;
  BadLambdaReason reason = BadLambdaReason::off_circle;  // meaningful when !ok()
  bool ok() const { return solution.has_value(); }
};

/// Full pipeline for one parameter: roots, weights, tangency points, residual
/// report. Not-good parameters come back as a BadLambda result, not an error.
/// Parameters extremely close to an interval boundary (within ~1e-5 of the
/// collision) may be rejected as bad when the weight certification cannot be
/// met in double precision.
inline SolveResult solve_triangle(const FociPair& f, UnimodularParam lam,
                                  const Tolerances& tol = {}) {
  const CubicPoly p = build_p_lambda(f, lam, tol);
  const auto roots = cubic_roots(p, tol);

  double min_sep = std::abs(roots[0] - roots[1]);
  min_sep = std::min(min_sep, std::abs(roots[0] - roots[2]));
  min_sep = std::min(min_sep, std::abs(roots[1] - roots[2]));
  if (min_sep <= tol.separation) return {std::nullopt, BadLambdaReason::root_collision};

  const CircleCheck circ = roots_on_circle(roots, tol.circle);
  if (!circ.all_on_circle) return {std::nullopt, BadLambdaReason::off_circle};

  TriangleSolution s;
  s.theta = lam.theta;
  s.roots = roots;
  try {
    s.weights = compute_weights(roots, f, p, tol);
  } catch (const Error& e) {
    if (e.code() == Errc::non_real_weight || e.code() == Errc::weight_mismatch) {
      return {std::nullopt, BadLambdaReason::off_circle};
    }
    throw;
  }
  s.tangency = tangency_points(roots, s.weights, tol);

  const ConicDescriptor conic = conic_descriptor(f, tol);
  s.residuals.max_circle = std::max({circ.residuals[0], circ.residuals[1], circ.residuals[2]});
  s.residuals.weight_sum = std::abs(s.weights[0] + s.weights[1] + s.weights[2] - 1.0);
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    s.reports[k] = tangency_check(s.tangency[k], s.roots[i], s.roots[j], conic, s.weights[k], tol);
    s.residuals.max_conic = std::max(s.residuals.max_conic, conic_residual(s.tangency[k], conic));
    s.residuals.max_angle = std::max(s.residuals.max_angle, s.reports[k].angle_residual);
  }
  return {s, BadLambdaReason::off_circle};
}

}  // namespace siconic
