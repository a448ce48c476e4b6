#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace siconic;

namespace {

/// Checks the focal factorisation zeta_k - f = m_k/(1 - m_k) (f - z_i)(f - z_j)/(f - z_k)
/// and side collinearity for every contact point of a solution.
void check_contact_identities(const TriangleSolution& s, const FociPair& f) {
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    if (std::abs(1.0 - s.weights[k]) > 1e-4) {  // else the factor is ill-conditioned
      for (const Complex& focus : {f.a, f.b}) {
        const Complex rhs = s.weights[k] / (1.0 - s.weights[k]) * (focus - s.roots[i]) *
                            (focus - s.roots[j]) / (focus - s.roots[k]);
        CHECK(std::abs((s.tangency[k] - focus) - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
      }
    }
    const Complex side = s.roots[j] - s.roots[i];
    const double cross = std::imag(std::conj(side) * (s.tangency[k] - s.roots[i]));
    CHECK(std::abs(cross) / std::abs(side) < 1e-10);
  }
}

}  // namespace

TEST_CASE("conic_descriptor: worked examples") {
  SECTION("real pair inside the disk is an ellipse") {
    const auto d = conic_descriptor(t::ex1);
    CHECK(d.kind == ConicKind::ellipse);
    CHECK(d.s == 1.0);
    CHECK(std::abs(d.eccentricity - 0.618) < 1e-15);
    CHECK(std::abs(d.center - Complex(0.309)) < 1e-15);
    CHECK(std::abs(d.linear_ecc - 0.309) < 1e-15);
    CHECK(std::abs(d.semi_major - 0.5) < 1e-15);
    CHECK(d.rotation == 0.0);
  }
  SECTION("pair outside the disk is still an ellipse") {
    const auto d = conic_descriptor(t::ex2);
    CHECK(d.kind == ConicKind::ellipse);
    CHECK(std::abs(d.s - t::ex2_s) < 1e-12);
    CHECK(std::abs(d.eccentricity - t::ex2_ecc) < 1e-12);
    CHECK(d.eccentricity < 1.0);
  }
  SECTION("straddling pair is a hyperbola") {
    const auto d = conic_descriptor(t::ex3);
    CHECK(d.kind == ConicKind::hyperbola);
    CHECK(std::abs(d.s - t::ex3_s) < 1e-12);
    CHECK(std::abs(d.eccentricity - t::ex3_ecc) < 1e-12);
    CHECK(std::abs(d.semi_major - t::ex3_semi_major) < 1e-12);
    CHECK(std::abs(d.semi_secondary - t::ex3_semi_secondary) < 1e-12);
    CHECK(std::abs(d.linear_ecc - t::ex3_linear_ecc) < 1e-12);
    CHECK(std::abs(d.rotation - t::ex3_rotation) < 1e-12);
    CHECK(d.eccentricity > 1.0);
  }
  SECTION("coincident foci are a circle") {
    const auto d = conic_descriptor({Complex(0.3), Complex(0.3)});
    CHECK(d.kind == ConicKind::circle);
    CHECK(std::abs(d.s - 0.91) < 1e-15);
    CHECK(std::abs(d.semi_major - 0.455) < 1e-15);
    CHECK(std::abs(d.semi_secondary - 0.455) < 1e-15);
    CHECK(d.rotation == 0.0);
    CHECK(d.eccentricity == 0.0);
  }
  SECTION("mutually inverse foci degenerate") {
    CHECK_THROWS_MATCHES(conic_descriptor({Complex(0.5), Complex(2.0)}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::degenerate_conic;
                         }));
  }
}

TEST_CASE("property: focal identity s^2 - |a-b|^2 = (1-|a|^2)(1-|b|^2)") {
  UniformRng rng(17);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const FociPair f{rng.in_disk(3.0, 0.05), rng.in_disk(3.0, 0.05)};
    ConicDescriptor d;
    try {
      d = conic_descriptor(f);
    } catch (const Error&) {
      continue;  // mutually inverse pair: descriptor undefined
    }
    ++checked;
    const double lhs = d.s * d.s - std::norm(f.a - f.b);
    const double rhs = (1.0 - std::norm(f.a)) * (1.0 - std::norm(f.b));
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    CHECK(std::abs(lhs - rhs) / scale < 1e-12);
    // kind agrees with the eccentricity side of 1
    if (d.kind == ConicKind::ellipse) CHECK(d.eccentricity < 1.0);
    if (d.kind == ConicKind::hyperbola) CHECK(d.eccentricity > 1.0);
    if (d.kind == ConicKind::circle) CHECK(d.eccentricity == 0.0);
  }
  CHECK(checked > 990);
}

TEST_CASE("conic_residual vanishes on the curve and grows off it") {
  const auto circ = conic_descriptor({Complex(0.3), Complex(0.3)});
  CHECK(conic_residual(Complex(0.3 + 0.455), circ) < 1e-15);
  CHECK(conic_residual(Complex(0.3, 0.455), circ) < 1e-15);
  const auto ell = conic_descriptor(t::ex1);
  CHECK(std::abs(conic_residual(Complex(0.0), ell) - 0.382) < 1e-15);
}

TEST_CASE("compute_weights: residues are real, sum to one, match frozen values") {
  SECTION("real example at lambda = 1") {
    const CubicPoly p = build_p_lambda(t::ex1, {0.0});
    const auto roots = cubic_roots(p);
    const auto m = compute_weights(roots, t::ex1, p);
    CHECK(std::abs(m[0] - t::ex1_m12) < 1e-11);
    CHECK(std::abs(m[1] - t::ex1_m12) < 1e-11);
    CHECK(std::abs(m[2] - t::ex1_m3) < 1e-11);
    CHECK(std::abs(m[0] + m[1] + m[2] - 1.0) < 1e-14);
  }
  SECTION("equilateral case gives 1/3 each") {
    const FociPair f{Complex(0.0), Complex(0.0)};
    const CubicPoly p = build_p_lambda(f, {0.0});
    const auto roots = cubic_roots(p);
    const auto m = compute_weights(roots, f, p);
    for (double w : m) CHECK(std::abs(w - 1.0 / 3.0) < 1e-14);
  }
  SECTION("near-coincident roots are rejected") {
    const std::array<Complex, 3> roots = {Complex(1.0), Complex(1.0 + 5e-7), Complex(-1.0)};
    const CubicPoly p = t::poly_from_roots(roots[0], roots[1], roots[2]);
    CHECK_THROWS_MATCHES(compute_weights(roots, {Complex(0.3), Complex(-0.2)}, p), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::root_collision;
                         }));
  }
  SECTION("off-circle roots give non-real residues") {
    const std::array<Complex, 3> roots = {Complex(-1.0), Complex(0.0, 3.0), Complex(2.0)};
    const CubicPoly p = t::poly_from_roots(roots[0], roots[1], roots[2]);
    CHECK_THROWS_MATCHES(compute_weights(roots, {Complex(0.3), Complex(0.0, 0.4)}, p), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::non_real_weight;
                         }));
  }
  SECTION("closed-form cross-check catches inconsistent residues") {
    // unimodular roots but not a family member: the residue at -1 is
    // 0.26 - 0.26i while the closed form gives 0.329; relaxing the imaginary
    // gate exposes the mismatch branch
    const std::array<Complex, 3> roots = {Complex(-1.0), Complex(0.0, 1.0), Complex(1.0)};
    const CubicPoly p = t::poly_from_roots(roots[0], roots[1], roots[2]);
    Tolerances tol;
    tol.weight_imag = 10.0;
    CHECK_THROWS_MATCHES(compute_weights(roots, {Complex(0.3), Complex(-0.2)}, p, tol), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::weight_mismatch;
                         }));
  }
}

TEST_CASE("tangency_points: section formula on each side") {
  SECTION("frozen real example") {
    const CubicPoly p = build_p_lambda(t::ex1, {0.0});
    const auto roots = cubic_roots(p);
    const auto m = compute_weights(roots, t::ex1, p);
    const auto zeta = tangency_points(roots, m);
    // the conjugate-pair order within the sorted roots is rounding-determined;
    // zeta_k faces vertex k, so the upper contact sits opposite the lower root
    const int km = roots[0].imag() < roots[1].imag() ? 0 : 1;
    CHECK(std::abs(zeta[km] - t::ex1_zeta12) < 1e-10);
    CHECK(std::abs(zeta[1 - km] - std::conj(t::ex1_zeta12)) < 1e-10);
    CHECK(std::abs(zeta[2].imag()) < 1e-12);
    CHECK(std::abs(zeta[2].real() + 0.191) < 1e-12);
  }
  SECTION("equal weights give side midpoints") {
    const CubicPoly p = build_p_lambda({Complex(0.0), Complex(0.0)}, {0.0});
    const auto roots = cubic_roots(p);
    const std::array<double, 3> m = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    const auto zeta = tangency_points(roots, m);
    CHECK(std::abs(zeta[0] - 0.5 * (roots[1] + roots[2])) < 1e-15);
    CHECK(std::abs(zeta[1] - 0.5 * (roots[0] + roots[2])) < 1e-15);
    CHECK(std::abs(zeta[2] - 0.5 * (roots[0] + roots[1])) < 1e-15);
    for (const Complex& z : zeta) CHECK(std::abs(std::abs(z) - 0.5) < 1e-12);
  }
  SECTION("a vanishing weight pins the contact at the other vertex") {
    const std::array<Complex, 3> z = {Complex(0.1, 0.2), Complex(0.9, -0.4), Complex(-1.0)};
    const std::array<double, 3> m = {1.0, 0.0, 0.5};
    const auto zeta = tangency_points(z, m);
    CHECK(zeta[2] == z[1]);  // (1 * z1 + 0 * z0) / 1
  }
  SECTION("cancelling weight pair is rejected") {
    const std::array<Complex, 3> z = {Complex(0.1, 0.2), Complex(0.9, -0.4), Complex(-1.0)};
    const std::array<double, 3> m = {0.5, -0.5, 0.2};
    CHECK_THROWS_MATCHES(tangency_points(z, m), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::weight_pair_degenerate;
                         }));
  }
}

TEST_CASE("tangency_check: reflection angle and second-order probe") {
  const CubicPoly p = build_p_lambda(t::ex1, {0.0});
  const auto roots = cubic_roots(p);
  const auto m = compute_weights(roots, t::ex1, p);
  const auto zeta = tangency_points(roots, m);
  const auto conic = conic_descriptor(t::ex1);

  SECTION("a genuine contact passes every probe") {
    const auto rep = tangency_check(zeta[0], roots[1], roots[2], conic, m[0]);
    CHECK(rep.angle_residual < 1e-10);
    CHECK(rep.second_order_ok);
    CHECK(rep.scaling_ratio > 50.0);
    CHECK(rep.scaling_ratio < 200.0);
    CHECK(rep.branch_matches_weight);
  }
  SECTION("the normal line through the same point scales linearly") {
    const Complex dir = (roots[2] - roots[1]) / std::abs(roots[2] - roots[1]);
    const Complex n = Complex(0.0, 1.0) * dir;
    const auto rep = tangency_check(zeta[0], zeta[0] - 0.5 * n, zeta[0] + 0.5 * n, conic, m[0]);
    CHECK_FALSE(rep.second_order_ok);
    CHECK(rep.scaling_ratio < 50.0);
  }
  SECTION("degenerate geometry is rejected") {
    CHECK_THROWS_MATCHES(tangency_check(zeta[0], roots[1], roots[1], conic, m[0]), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::degenerate_tangency;
                         }));
    CHECK_THROWS_AS(tangency_check(roots[1], roots[1], roots[2], conic, m[0]), Error);
    // zeta sitting exactly on a focus is also degenerate
    CHECK_THROWS_AS(tangency_check(conic.focus_a, Complex(2.0, 1.0), roots[2], conic, m[0]),
                    Error);
  }
}

TEST_CASE("solve_triangle: full pipeline on the worked examples") {
  SECTION("real pair at lambda = 1") {
    const auto res = solve_triangle(t::ex1, {0.0});
    REQUIRE(res.ok());
    const auto& s = *res.solution;
    CHECK(std::abs(s.roots[2] - Complex(1.0)) < 1e-12);
    // pair order within the sorted roots is rounding-determined: pick by sign
    const int kp = s.roots[0].imag() > s.roots[1].imag() ? 0 : 1;
    CHECK(std::abs(s.roots[kp] - Complex(-0.191, t::ex1_pair_im)) < 1e-12);
    CHECK(std::abs(s.weights[0] - t::ex1_m12) < 1e-11);
    CHECK(std::abs(s.weights[2] - t::ex1_m3) < 1e-11);
    CHECK(std::abs(s.tangency[1 - kp] - t::ex1_zeta12) < 1e-10);
    CHECK(s.residuals.max_circle < 1e-12);
    CHECK(s.residuals.max_conic < 1e-10);
    CHECK(s.residuals.max_angle < 1e-10);
    CHECK(s.residuals.weight_sum < 1e-14);
    for (const auto& rep : s.reports) {
      CHECK(rep.second_order_ok);
      CHECK(rep.branch_matches_weight);
    }
    check_contact_identities(s, t::ex1);
  }
  SECTION("equilateral family: inscribed circle of radius one half") {
    const FociPair f{Complex(0.0), Complex(0.0)};
    for (int j = 0; j < 32; ++j) {
      const double theta = 2.0 * t::pi * (j + 0.5) / 32.0;
      const auto res = solve_triangle(f, {theta});
      REQUIRE(res.ok());
      const auto& s = *res.solution;
      for (double w : s.weights) CHECK(std::abs(w - 1.0 / 3.0) < 1e-12);
      for (const Complex& z : s.tangency) CHECK(std::abs(std::abs(z) - 0.5) < 1e-12);
      CHECK(s.residuals.max_conic < 1e-12);
      for (const auto& rep : s.reports) CHECK(rep.second_order_ok);
    }
  }
  SECTION("outside-pair example: bad parameter comes back as off_circle") {
    const auto res = solve_triangle(t::ex2, {1.0});
    CHECK_FALSE(res.ok());
    CHECK(res.reason == BadLambdaReason::off_circle);
  }
  SECTION("outside-pair example: good parameter, all-positive weights, ellipse") {
    const auto res = solve_triangle(t::ex2, {3.6});
    REQUIRE(res.ok());
    const auto& s = *res.solution;
    const double prod = s.weights[0] * s.weights[1] * s.weights[2];
    CHECK(prod > 0.0);
    CHECK(std::abs(prod - 0.1716) < 1e-3);
    CHECK(s.residuals.max_conic < 1e-8);
    CHECK(s.residuals.max_angle < 1e-8);
    for (const auto& rep : s.reports) {
      CHECK(rep.second_order_ok);
      CHECK(rep.branch_matches_weight);
    }
    check_contact_identities(s, t::ex2);
  }
  SECTION("straddling example: mixed-sign weights, hyperbola") {
    const auto res = solve_triangle(t::ex3, {0.7168});
    REQUIRE(res.ok());
    const auto& s = *res.solution;
    const double prod = s.weights[0] * s.weights[1] * s.weights[2];
    CHECK(prod < 0.0);
    CHECK(std::abs(prod + 0.04168) < 1e-3);
    CHECK(s.residuals.max_conic < 1e-8);
    for (const auto& rep : s.reports) {
      CHECK(rep.second_order_ok);
      CHECK(rep.branch_matches_weight);
    }
    check_contact_identities(s, t::ex3);
  }
  SECTION("contact identities hold along parameter sweeps") {
    for (int j = 0; j < 16; ++j) {
      const double theta = 2.0 * t::pi * (j + 0.5) / 16.0;
      const auto res = solve_triangle(t::ex1, {theta});
      REQUIRE(res.ok());
      check_contact_identities(*res.solution, t::ex1);
    }
    for (int j = 0; j < 10; ++j) {
      const double lo = t::ex2_lo + 0.1;
      const double hi = t::ex2_hi - 0.1;
      const auto res = solve_triangle(t::ex2, {lo + (hi - lo) * (j + 0.5) / 10.0});
      REQUIRE(res.ok());
      check_contact_identities(*res.solution, t::ex2);
    }
    for (int j = 0; j < 10; ++j) {
      const double lo = t::ex3_lo + 0.1;
      const double hi = t::ex3_hi - 0.1;
      const auto res = solve_triangle(t::ex3, {lo + (hi - lo) * (j + 0.5) / 10.0});
      REQUIRE(res.ok());
      check_contact_identities(*res.solution, t::ex3);
    }
  }
}
