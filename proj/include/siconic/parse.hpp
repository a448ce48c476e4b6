#pragma once

#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <regex>
#include <string>
#include <string_view>

#include "siconic/cpoly.hpp"

namespace siconic {

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline double to_double(const std::string& text) {
  if (text.empty() || text == "+") return 1.0;   // bare or signed 'i'
  if (text == "-") return -1.0;
  return std::strtod(text.c_str(), nullptr);     // shape already vetted by regex
}

}  // namespace detail

/// Parses "re", "imi", "re+imi", "re-imi", with "i"/"I" and an optional bare
/// sign as the coefficient ("2-i"). No interior whitespace. Anything else is
/// rejected with a diagnostic naming the offending text.
inline Complex parse_complex(std::string_view text) {
  static const std::string num = R"((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex both("([+-]?" + num + ")([+-](?:" + num + ")?)[iI]");
  static const std::regex imag_only("([+-]?(?:" + num + ")?)[iI]");
  static const std::regex real_only("([+-]?" + num + ")");

  const std::string t = detail::trim(text);
  std::smatch m;
  Complex z;
  if (std::regex_match(t, m, both)) {
    z = Complex(detail::to_double(m[1]), detail::to_double(m[2]));
  } else if (std::regex_match(t, m, imag_only)) {
    z = Complex(0.0, detail::to_double(m[1]));
  } else if (std::regex_match(t, m, real_only)) {
    z = Complex(detail::to_double(m[1]), 0.0);
  } else {
    raise(Errc::bad_input, "parse_complex: cannot parse '" + std::string(text) +
                               "' as a complex literal (expected re, imi, or re+imi)");
  }
  if (!is_finite(z)) {
    raise(Errc::bad_input, "parse_complex: '" + std::string(text) + "' overflows a double");
  }
  return z;
}

/// Flat key = value tolerance file: one assignment per line, '#' comments,
/// blank lines ignored. Keys are the Tolerances field names; unknown keys and
/// malformed lines are rejected with a diagnostic.
inline Tolerances load_tolerances(std::istream& in, Tolerances base = {}) {
  static const std::map<std::string, double Tolerances::*> keys = {
      {"root_residual", &Tolerances::root_residual},
      {"newton_step", &Tolerances::newton_step},
      {"circle", &Tolerances::circle},
      {"separation", &Tolerances::separation},
      {"foci_circle", &Tolerances::foci_circle},
      {"degree_guard", &Tolerances::degree_guard},
      {"derivative_guard", &Tolerances::derivative_guard},
      {"value_floor", &Tolerances::value_floor},
      {"pole_guard", &Tolerances::pole_guard},
      {"self_inversive", &Tolerances::self_inversive},
      {"weight_imag", &Tolerances::weight_imag},
      {"weight_cross", &Tolerances::weight_cross},
      {"weight_pair", &Tolerances::weight_pair},
      {"point_guard", &Tolerances::point_guard},
      {"conic_membership", &Tolerances::conic_membership},
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      raise(Errc::bad_input,
            "tolerance file line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = detail::trim(body.substr(0, eq));
    const std::string value = detail::trim(body.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) {
      raise(Errc::bad_input,
            "tolerance file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v)) {
      raise(Errc::bad_input, "tolerance file line " + std::to_string(lineno) +
                                 ": cannot parse value '" + value + "'");
    }
    base.*(it->second) = v;
  }
  return base;
}

inline Tolerances load_tolerances_file(const std::string& path, Tolerances base = {}) {
  std::ifstream in(path);
  if (!in) raise(Errc::bad_input, "cannot open tolerance file '" + path + "'");
  return load_tolerances(in, base);
}

}  // namespace siconic
