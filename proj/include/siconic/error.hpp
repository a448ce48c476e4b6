#pragma once

#include <stdexcept>
#include <string>

namespace siconic {

enum class Errc {
  degenerate_degree,      // leading coefficient vanishes
  zero_coefficient,       // cannot normalize by a (near-)zero coefficient
  pole_proximity,         // evaluation point too close to a Blaschke pole
  root_collision,         // root pair closer than the separation tolerance
  non_real_weight,        // residue weight has a non-negligible imaginary part
  weight_mismatch,        // residue form and closed form disagree
  weight_pair_degenerate, // m_i + m_j too small to place a tangency point
  degenerate_tangency,    // tangency point coincides with a line endpoint or focus
  invalid_bracket,        // refinement bracket is not (good, bad)
  focus_on_circle,        // focus on the unit circle: the family degenerates
  degenerate_conic,       // foci are mutual reflections, no conic exists
  non_finite,             // NaN or infinity in an input
  bad_input,              // malformed text, out-of-range argument, I/O failure
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace siconic
