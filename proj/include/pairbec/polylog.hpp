#pragma once

namespace pairbec {

// Li_{1/2}(z) = sum_{k>=1} z^k / sqrt(k) for z in [0, 1).
//
// Direct summation for z <= e^{-1/10}; near the z -> 1 singularity the
// expansion Li_{1/2}(e^{-t}) = sqrt(pi/t) + sum_{k>=0} zeta(1/2-k) (-t)^k / k!
// is used instead (ten terms, switching at t = 1/10), because the series
// converges too slowly there.
double polylog_half(double z);

}
