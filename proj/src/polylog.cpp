#include "pairbec/polylog.hpp"

#include <cmath>

#include "pairbec/errors.hpp"

namespace pairbec {

namespace {

// zeta(1/2 - k) for k = 0..9, frozen at 18 significant digits.
constexpr double kZetaHalfMinus[10] = {
    -1.46035450880958681,    -0.207886224977354566,  -0.0254852018898330359,
    0.00851692877785033054,  0.00444101133547943196, -0.00309166924721583384,
    -0.00267145801989922460, 0.00274676793953686876, 0.00326903957260022002,
    -0.00441603287300488981,
};

}  // namespace

double polylog_half(double z) {
    if (std::isnan(z) || z < 0.0)
        throw InputError("polylog argument must lie in [0, 1)");
    if (z >= 1.0)
        throw InputError("polylog of order 1/2 diverges at z = 1");
    if (z == 0.0) return 0.0;

    const double t = -std::log(z);
    if (t >= 0.1) {
        double sum = z;
        double zk = z;
        for (int k = 2; k <= 600; ++k) {
            zk *= z;
            const double term = zk / std::sqrt(static_cast<double>(k));
            sum += term;
            if (term <= 1e-17 * sum) break;
        }
        return sum;
    }

    double sum = std::sqrt(M_PI / t);
    double tk = 1.0;  // (-t)^k / k!
    for (int k = 0; k < 10; ++k) {
        sum += kZetaHalfMinus[k] * tk;
        tk *= -t / (k + 1);
    }
    return sum;
}

}  // namespace pairbec
