#pragma once

#include "taulift/types.hpp"

namespace taulift {

// True iff some power m^k vanishes identically, k <= m.rows().
bool is_nilpotent(const Mat& m);

// Matrix exponential. Truncated series (exact) when the argument is
// nilpotent, otherwise scaling-and-squaring with a degree-13 Pade core.
Mat expm(const Mat& a);

// Principal matrix logarithm. Mercator series (exact) when m - I is
// nilpotent, otherwise inverse scaling-and-squaring with Denman-Beavers
// square roots. Throws numeric_error when the iteration fails.
Mat logm(const Mat& m);

// phi(z) = (1 - e^{-z})/z applied to a matrix argument, as the series
// sum_k (-M)^k/(k+1)!. Adaptive termination (term < 1e-16 * accumulated),
// cap 60 terms; exact termination on nilpotent input.
Mat phi1m(const Mat& m);

// dexp with the right trivialization: d/dt exp(u(t)) = dexp_{ad_u}(u') exp(u),
// dexp(z) = (e^z - 1)/z. Returns the matrix sum_k ad^k/(k+1)!.
Mat dexp_series(const Mat& ad_u);

// Solves dexp_{ad_u}(x) = w for x (inverse right-trivialized tangent map).
Vec dexpinv_apply(const Mat& ad_u, const Vec& w);

}  // namespace taulift
