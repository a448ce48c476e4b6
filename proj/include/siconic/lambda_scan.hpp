#pragma once

#include <utility>
#include <vector>

#include "siconic/envelope.hpp"

namespace siconic {

inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double w = std::fmod(theta, two_pi);
  return w < 0.0 ? w + two_pi : w;
}

struct LambdaClass {
  bool good = false;
  BadLambdaReason reason = BadLambdaReason::off_circle;  // meaningful when !good
  std::array<Complex, 3> roots{};
  double max_circle_residual = 0.0;
  double min_separation = 0.0;
};

/// Good iff all three roots sit on the circle within tol.circle and every pair
/// is separated by more than tol.separation. Separation is tested first: roots
/// leave the circle through a collision, so that is the failure seen first.
inline LambdaClass classify_lambda(const FociPair& f, double theta, const Tolerances& tol = {}) {
  LambdaClass out;
  out.roots = cubic_roots(build_p_lambda(f, UnimodularParam{theta}, tol), tol);
  out.min_separation = std::min({std::abs(out.roots[0] - out.roots[1]),
                                 std::abs(out.roots[0] - out.roots[2]),
                                 std::abs(out.roots[1] - out.roots[2])});
  const CircleCheck circ = roots_on_circle(out.roots, tol.circle);
  out.max_circle_residual = std::max({circ.residuals[0], circ.residuals[1], circ.residuals[2]});
  if (out.min_separation <= tol.separation) {
    out.good = false;
    out.reason = BadLambdaReason::root_collision;
  } else if (!circ.all_on_circle) {
    out.good = false;
    out.reason = BadLambdaReason::off_circle;
  } else {
    out.good = true;
  }
  return out;
}

struct BoundaryInfo {
  double theta_star = 0.0;  ///< good-side endpoint of the final bracket
  Complex double_root;      ///< midpoint of the closest root pair at theta_star
};

/// One good/bad arc of parameters. theta_lo < theta_hi always; an arc crossing
/// the 2 pi seam keeps theta_lo in [0, 2 pi) and lets theta_hi exceed 2 pi.
/// A boundary is absent only for the full-circle interval.
struct LambdaInterval {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  std::optional<BoundaryInfo> boundary_lo;
  std::optional<BoundaryInfo> boundary_hi;
};

/// Bisects a (good, bad) bracket down to width tol_width and returns the
/// collision data at the boundary. Angles may be passed unwrapped; they are
/// wrapped for classification only, and theta_star comes back in the callers'
/// coordinate. The double root must sit on the unit circle within 1e-6 and
/// annihilate P' to 1e-4 (scaled); anything else means the bracket did not
/// tighten onto a genuine collision.
inline BoundaryInfo refine_boundary(const FociPair& f, double theta_good, double theta_bad,
                                    double tol_width, const Tolerances& tol = {}) {
  if (!(tol_width > 0.0)) raise(Errc::bad_input, "refine_boundary: tol_width must be positive");
  const auto is_good = [&](double th) { return classify_lambda(f, wrap_angle(th), tol).good; };
  if (!is_good(theta_good) || is_good(theta_bad)) {
    raise(Errc::invalid_bracket, "refine_boundary: bracket endpoints must classify (good, bad)");
  }
  double g = theta_good;
  double b = theta_bad;
  while (std::abs(g - b) > tol_width) {
    const double mid = 0.5 * (g + b);
    (is_good(mid) ? g : b) = mid;
  }

  const auto at = classify_lambda(f, wrap_angle(g), tol);
  int bi = 0, bj = 1;
  double best = std::abs(at.roots[0] - at.roots[1]);
  if (std::abs(at.roots[0] - at.roots[2]) < best) best = std::abs(at.roots[0] - at.roots[2]), bi = 0, bj = 2;
  if (std::abs(at.roots[1] - at.roots[2]) < best) bi = 1, bj = 2;
  BoundaryInfo info{g, 0.5 * (at.roots[bi] + at.roots[bj])};

  if (std::abs(std::abs(info.double_root) - 1.0) > 1e-6) {
    raise(Errc::invalid_bracket, "refine_boundary: collision point is not on the unit circle");
  }
  const CubicPoly p = build_p_lambda(f, UnimodularParam{wrap_angle(g)}, tol);
  const auto d = poly_derivative(p);
  const double scale = 1.0 + std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
  const Complex dp = (d[2] * info.double_root + d[1]) * info.double_root + d[0];
  if (std::abs(dp) > 1e-4 * scale) {
    raise(Errc::invalid_bracket, "refine_boundary: P' does not vanish at the collision point");
  }
  return info;
}

/// Samples theta on a uniform grid over [0, 2 pi), merges cyclically adjacent
/// good samples into arcs (runs crossing the seam become one wrapped arc), and
/// refines every arc boundary by bisection. Returns arcs sorted by theta_lo;
/// a fully good circle comes back as the single boundary-less interval
/// [0, 2 pi), a fully bad circle as an empty vector. Per-sample classification
/// is independent, so the grid pass is embarrassingly parallel; it runs
/// sequentially here for bit-stable output.
inline std::vector<LambdaInterval> scan_good_intervals(const FociPair& f, int n_samples = 2048,
                                                       double refine_tol = 1e-10,
                                                       const Tolerances& tol = {}) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (n_samples < 64) raise(Errc::bad_input, "scan_good_intervals: n_samples must be >= 64");
  if (!(refine_tol > 0.0)) raise(Errc::bad_input, "scan_good_intervals: refine_tol must be positive");

  const double step = two_pi / n_samples;
  std::vector<char> good(n_samples);
  int n_good = 0;
  for (int j = 0; j < n_samples; ++j) {
    good[j] = classify_lambda(f, j * step, tol).good ? 1 : 0;
    n_good += good[j];
  }
  if (n_good == n_samples) return {LambdaInterval{0.0, two_pi, std::nullopt, std::nullopt}};
  if (n_good == 0) return {};

  int anchor = 0;
  while (good[anchor]) ++anchor;

  // walk one full turn starting just past the bad anchor; runs cannot wrap now
  std::vector<std::pair<int, int>> runs;
  int start = -1;
  for (int k = 1; k <= n_samples; ++k) {
    const bool g = k < n_samples && good[(anchor + k) % n_samples];
    if (g && start < 0) start = k;
    if (!g && start >= 0) {
      runs.emplace_back(start, k - 1);
      start = -1;
    }
  }

  std::vector<LambdaInterval> out;
  for (const auto& [k0, k1] : runs) {
    LambdaInterval arc;
    arc.boundary_lo = refine_boundary(f, (anchor + k0) * step, (anchor + k0 - 1) * step,
                                      refine_tol, tol);
    arc.boundary_hi = refine_boundary(f, (anchor + k1) * step, (anchor + k1 + 1) * step,
                                      refine_tol, tol);
    arc.theta_lo = arc.boundary_lo->theta_star;
    arc.theta_hi = arc.boundary_hi->theta_star;
    if (arc.theta_lo >= two_pi) {
      arc.theta_lo -= two_pi;
      arc.theta_hi -= two_pi;
      arc.boundary_lo->theta_star -= two_pi;
      arc.boundary_hi->theta_star -= two_pi;
    }
    out.push_back(arc);
  }
  std::sort(out.begin(), out.end(),
            [](const LambdaInterval& u, const LambdaInterval& v) { return u.theta_lo < v.theta_lo; });
  return out;
}

/// Deterministic theta samples across a set of good arcs: counts allocated
/// proportionally to arc width, each arc inset by inset_fraction of its width
/// on both ends. The boundary-less full circle gets count equally spaced
/// values starting at 0 with no inset.
inline std::vector<double> spread_thetas(const std::vector<LambdaInterval>& arcs, int count,
                                         double inset_fraction) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> out;
  if (count <= 0 || arcs.empty()) return out;
  if (arcs.size() == 1 && !arcs[0].boundary_lo && !arcs[0].boundary_hi) {
    for (int j = 0; j < count; ++j) out.push_back(two_pi * j / count);
    return out;
  }
  double total = 0.0;
  for (const auto& arc : arcs) total += arc.theta_hi - arc.theta_lo;
  double acc = 0.0;
  int placed = 0;
  for (const auto& arc : arcs) {
    const double w = arc.theta_hi - arc.theta_lo;
    acc += w;
    const int upto = static_cast<int>(std::llround(acc / total * count));
    const int n_here = upto - placed;
    placed = upto;
    if (n_here <= 0) continue;
    const double lo = arc.theta_lo + inset_fraction * w;
    const double span = w * (1.0 - 2.0 * inset_fraction);
    for (int j = 0; j < n_here; ++j) out.push_back(lo + span * (j + 0.5) / n_here);
  }
  return out;
}

}  // namespace siconic
