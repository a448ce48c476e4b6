#pragma once

// Self-inversive cubic family P(z) = z (z - a)(z - b) - lambda (1 - conj(a) z)(1 - conj(b) z):
// root triangles on the unit circle, the conic they envelope, tangency data,
// good-parameter arcs, figure rendering.

#include "siconic/cpoly.hpp"
#include "siconic/envelope.hpp"
#include "siconic/error.hpp"
#include "siconic/inversive.hpp"
#include "siconic/lambda_scan.hpp"
#include "siconic/parse.hpp"
#include "siconic/random.hpp"
#include "siconic/render.hpp"
#include "siconic/tolerances.hpp"
