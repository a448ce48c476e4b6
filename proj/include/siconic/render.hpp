#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "siconic/envelope.hpp"

namespace siconic {

struct ViewBox {
  Complex center{0.0, 0.0};
  double half_width = 1.6;
};

struct Style {
  std::string background = "#ffffff";
  std::string circle_color = "#888888";
  std::string conic_color = "#c0392b";
  std::string side_color = "#2a6fc2";
  std::string marker_color = "#1d8a45";
  double circle_stroke = 1.0;
  double conic_stroke = 2.0;
  double side_stroke = 0.8;
  double side_opacity = 0.45;
  double marker_radius = 3.0;
  double extend_sides = 0.0;  ///< fraction of side length drawn past each endpoint
  int conic_samples = 512;
  bool draw_unit_circle = true;
  bool draw_tangency_points = true;
};

struct Scene {
  ConicDescriptor descriptor;
  std::vector<TriangleSolution> solutions;
  ViewBox view{};
  Style style{};
};

namespace detail {

inline void append_num(std::string& s, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  s += buf;
}

inline std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

/// Polylines tracing the conic. Ellipse and circle come back as one closed
/// ring of n points; a hyperbola as two open polylines of n points, one per
/// branch, clipped to the square of half-width clip_half_width around
/// box_center (a branch whose vertex falls outside the box is omitted).
/// Parametrization: center + R(rotation) (A cos t, B sin t) for the ellipse,
/// center +/- R(rotation) (A cosh u, B sinh u) for the hyperbola.
inline std::vector<std::vector<Complex>> sample_conic(const ConicDescriptor& c, int n,
                                                      double clip_half_width,
                                                      Complex box_center = Complex(0.0, 0.0)) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (n < 16) raise(Errc::bad_input, "sample_conic: n must be >= 16");
  if (!(clip_half_width > 0.0)) raise(Errc::bad_input, "sample_conic: clip box must be positive");
  const Complex rot = std::polar(1.0, c.rotation);

  if (c.kind != ConicKind::hyperbola) {
    std::vector<Complex> ring(n);
    for (int j = 0; j < n; ++j) {
      const double t = two_pi * j / n;
      ring[j] = c.center + rot * Complex(c.semi_major * std::cos(t),
                                         c.semi_secondary * std::sin(t));
    }
    return {ring};
  }

  std::vector<std::vector<Complex>> out;
  const auto inside = [&](Complex z) {
    return std::abs(z.real() - box_center.real()) <= clip_half_width &&
           std::abs(z.imag() - box_center.imag()) <= clip_half_width;
  };
  for (const double sign : {1.0, -1.0}) {
    const auto point = [&](double u) {
      return c.center + rot * Complex(sign * c.semi_major * std::cosh(u),
                                      sign * c.semi_secondary * std::sinh(u));
    };
    if (!inside(point(0.0))) continue;  // vertex off-box: branch not visible
    // largest |u| still inside the box, one search per direction
    const auto find_limit = [&](double dir) {
      double in = 0.0, probe = 1.0;
      while (inside(point(dir * probe))) {
        in = probe;
        probe *= 2.0;
        if (probe > 1e6) break;  // box would have to be astronomically large
      }
      double lo = in, hi = probe;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (inside(point(dir * mid)) ? lo : hi) = mid;
      }
      return lo;
    };
    const double u_hi = find_limit(1.0);
    const double u_lo = -find_limit(-1.0);
    std::vector<Complex> branch(n);
    for (int j = 0; j < n; ++j) branch[j] = point(u_lo + (u_hi - u_lo) * j / (n - 1));
    out.push_back(std::move(branch));
  }
  return out;
}

/// Deterministic 800x800 SVG: background, unit circle, conic, triangle sides
/// (extended by style.extend_sides of their length past both endpoints),
/// tangency markers. Identical scenes produce byte-identical output; every
/// number is printed with six fixed decimals.
inline std::string render_svg(const Scene& scene) {
  const double scale = 400.0 / scene.view.half_width;
  const auto sx = [&](Complex z) { return 400.0 + (z.real() - scene.view.center.real()) * scale; };
  const auto sy = [&](Complex z) { return 400.0 - (z.imag() - scene.view.center.imag()) * scale; };
  const Style& st = scene.style;

  std::string svg;
  svg.reserve(1 << 16);
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"" + st.background + "\"/>\n";

  if (st.draw_unit_circle) {
    svg += "<circle cx=\"400.000000\" cy=\"400.000000\" r=\"";
    detail::append_num(svg, scale);
    svg += "\" fill=\"none\" stroke=\"" + st.circle_color + "\" stroke-width=\"";
    detail::append_num(svg, st.circle_stroke);
    svg += "\"/>\n";
  }

  const auto polylines = sample_conic(scene.descriptor, st.conic_samples,
                                      1.05 * scene.view.half_width, scene.view.center);
  const bool closed = scene.descriptor.kind != ConicKind::hyperbola;
  for (const auto& line : polylines) {
    svg += "<path d=\"";
    for (std::size_t j = 0; j < line.size(); ++j) {
      svg += j == 0 ? "M " : " L ";
      detail::append_num(svg, sx(line[j]));
      svg += ' ';
      detail::append_num(svg, sy(line[j]));
    }
    if (closed) svg += " Z";
    svg += "\" fill=\"none\" stroke=\"" + st.conic_color + "\" stroke-width=\"";
    detail::append_num(svg, st.conic_stroke);
    svg += "\"/>\n";
  }

  if (!scene.solutions.empty()) {
    svg += "<g stroke=\"" + st.side_color + "\" stroke-width=\"";
    detail::append_num(svg, st.side_stroke);
    svg += "\" stroke-opacity=\"";
    detail::append_num(svg, st.side_opacity);
    svg += "\">\n";
    for (const TriangleSolution& sol : scene.solutions) {
      for (int k = 0; k < 3; ++k) {
        const Complex zi = sol.roots[k];
        const Complex zj = sol.roots[(k + 1) % 3];
        const Complex d = zj - zi;
        const Complex p0 = zi - st.extend_sides * d;
        const Complex p1 = zj + st.extend_sides * d;
        svg += "<line x1=\"";
        detail::append_num(svg, sx(p0));
        svg += "\" y1=\"";
        detail::append_num(svg, sy(p0));
        svg += "\" x2=\"";
        detail::append_num(svg, sx(p1));
        svg += "\" y2=\"";
        detail::append_num(svg, sy(p1));
        svg += "\"/>\n";
      }
    }
    svg += "</g>\n";
  }

  if (st.draw_tangency_points && !scene.solutions.empty()) {
    svg += "<g fill=\"" + st.marker_color + "\">\n";
    for (const TriangleSolution& sol : scene.solutions) {
      for (const Complex& zeta : sol.tangency) {
        svg += "<circle cx=\"";
        detail::append_num(svg, sx(zeta));
        svg += "\" cy=\"";
        detail::append_num(svg, sy(zeta));
        svg += "\" r=\"";
        detail::append_num(svg, st.marker_radius);
        svg += "\"/>\n";
      }
    }
    svg += "</g>\n";
  }

  svg += "</svg>\n";
  return svg;
}

/// CSV table of solutions sorted by theta, one row per solution, numbers at
/// 12 significant digits, LF line endings, round-trippable to 1e-10.
inline std::string export_csv(const std::vector<TriangleSolution>& solutions) {
  std::string csv =
      "theta,z1_re,z1_im,z2_re,z2_im,z3_re,z3_im,m1,m2,m3,"
      "zeta1_re,zeta1_im,zeta2_re,zeta2_im,zeta3_re,zeta3_im,max_conic_residual\n";
  std::vector<const TriangleSolution*> order;
  order.reserve(solutions.size());
  for (const auto& s : solutions) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(),
                   [](const TriangleSolution* u, const TriangleSolution* v) {
                     return u->theta < v->theta;
                   });
  for (const TriangleSolution* s : order) {
    csv += detail::csv_num(s->theta);
    for (int k = 0; k < 3; ++k) {
      csv += ',' + detail::csv_num(s->roots[k].real());
      csv += ',' + detail::csv_num(s->roots[k].imag());
    }
    for (int k = 0; k < 3; ++k) csv += ',' + detail::csv_num(s->weights[k]);
    for (int k = 0; k < 3; ++k) {
      csv += ',' + detail::csv_num(s->tangency[k].real());
      csv += ',' + detail::csv_num(s->tangency[k].imag());
    }
    csv += ',' + detail::csv_num(s->residuals.max_conic);
    csv += '\n';
  }
  return csv;
}

}  // namespace siconic
