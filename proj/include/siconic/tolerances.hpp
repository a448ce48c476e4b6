#pragma once

namespace siconic {

/// Numeric thresholds shared across the pipeline. Field names double as the
/// keys accepted by the flat key = value config file (see parse.hpp).
struct Tolerances {
  double root_residual = 1e-10;     ///< cubic_roots certification, scaled by max |coeff|
  double newton_step = 1e-14;       ///< polish_root step cutoff
  double circle = 1e-9;             ///< ||z| - 1| bound for an on-circle root
  double separation = 1e-6;         ///< minimum pairwise root distance for a triangle

  // separation is deliberately looser than circle: near an interval boundary the
  // roots leave the circle through a collision, so the collision fires first.

  double foci_circle = 1e-9;        // reject foci this close to the unit circle
  double degree_guard = 1e-14;      // leading coefficient below this is not a cubic
  double derivative_guard = 1e-14;  // Newton bail-out near a multiple root
  double value_floor = 1e-15;       // |p(z)| below this counts as converged
  double pole_guard = 1e-12;        // Blaschke denominator floor
  double self_inversive = 1e-12;    // default coefficient-symmetry tolerance
  double weight_imag = 1e-9;        // allowed imaginary part of a residue weight
  double weight_cross = 1e-8;       // residue form vs closed form disagreement
  double weight_pair = 1e-10;       // |m_i + m_j| floor for tangency denominators
  double point_guard = 1e-10;       // tangency_check point-separation preconditions
  double conic_membership = 1e-8;   // per-point conic residual bound
};

}  // namespace siconic
