#include "pairbec/interval_spectrum.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pairbec/errors.hpp"

namespace pairbec {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Characteristic {
    double L1;
    double c;
    FarEnd far_end;

    double operator()(double k) const {
        if (far_end == FarEnd::Dirichlet)
            return k * std::cos(k * L1) + c * std::sin(k * L1);
        return k * std::sin(k * L1) - c * std::cos(k * L1);
    }
};

// Bracketed bisection with a safeguarded secant step.  The bracket is
// analytically guaranteed to contain exactly one root for 0 < alpha < inf;
// the secant proposal is accepted only when it stays inside the current
// bracket, so convergence is unconditional.
double solve_root(const Characteristic& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::runtime_error("interval spectrum: no sign change in root bracket");

    for (int it = 0; it < 200; ++it) {
        const double tol = 1e-12 * (1.0 + 0.5 * (lo + hi));
        if (hi - lo <= tol) break;

        double mid = lo + (hi - lo) * flo / (flo - fhi);  // secant through the bracket
        const double margin = 0.01 * (hi - lo);
        if (!(mid > lo + margin && mid < hi - margin))
            mid = 0.5 * (lo + hi);

        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ReducedSpectrum reduced_eigenvalues(const RobinIntervalProblem& problem, int n_max) {
    const double alpha = problem.alpha;
    const double d = problem.d;
    if (!(d > 0.0)) throw InputError("reduced_eigenvalues: d must be positive");
    if (std::isnan(alpha) || alpha < 0.0)
        throw InputError("reduced_eigenvalues: alpha must be >= 0 (or +inf)");
    if (n_max < 0) throw InputError("reduced_eigenvalues: n_max must be >= 0");

    const double L1 = d / std::sqrt(2.0);
    ReducedSpectrum out;
    out.problem = problem;
    out.eigenvalues.reserve(static_cast<std::size_t>(n_max) + 1);

    const bool dirichlet_far = problem.far_end == FarEnd::Dirichlet;

    if (alpha == 0.0 || std::isinf(alpha)) {
        // Closed forms.  alpha=0: Neumann at 0, so k_n*L1 = (n+1/2)pi (D far)
        // or n*pi (N far, eps_0 = 0 exactly).  alpha=inf: Dirichlet at 0, so
        // k_n*L1 = (n+1)pi (D far) or (n+1/2)pi (N far).
        for (int n = 0; n <= n_max; ++n) {
            double kL1;
            if (alpha == 0.0)
                kL1 = dirichlet_far ? (n + 0.5) * kPi : n * kPi;
            else
                kL1 = dirichlet_far ? (n + 1.0) * kPi : (n + 0.5) * kPi;
            const double k = kL1 / L1;
            out.eigenvalues.push_back(k * k);
        }
        return out;
    }

    const Characteristic f{L1, alpha / (2.0 * std::sqrt(2.0)), problem.far_end};
    for (int n = 0; n <= n_max; ++n) {
        double lo, hi;
        if (dirichlet_far) {
            lo = (n + 0.5) * kPi / L1;
            hi = (n + 1.0) * kPi / L1;
        } else {
            lo = n * kPi / L1;
            hi = (n + 0.5) * kPi / L1;
        }
        const double k = solve_root(f, lo, hi);
        out.eigenvalues.push_back(k * k);
    }
    return out;
}

double essential_spectrum_bottom(double alpha, double d) {
    return reduced_eigenvalues({alpha, d, FarEnd::Dirichlet}, 0).eigenvalues[0];
}

}
