#include "pairbec/extrapolation.hpp"

#include <cmath>

#include "pairbec/errors.hpp"

namespace pairbec {

RichardsonResult richardson_h2(double coarse, double fine) {
    if (!std::isfinite(coarse) || !std::isfinite(fine))
        throw InputError("extrapolation requires finite inputs");
    const double correction = (fine - coarse) / 3.0;
    return {fine + correction, std::fabs(correction)};
}

double aitken_limit(double e1, double e2, double e3) {
    if (!std::isfinite(e1) || !std::isfinite(e2) || !std::isfinite(e3))
        throw InputError("extrapolation requires finite inputs");
    const double d1 = e2 - e1;
    const double d2 = e3 - e2;
    if (d1 == 0.0 || d2 == 0.0) return e3;
    const double q = d2 / d1;
    if (!(std::fabs(1.0 - q) > 1e-12)) return e3;
    return e3 + d2 * q / (1.0 - q);
}

}  // namespace pairbec
