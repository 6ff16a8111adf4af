#pragma once

#include <vector>

namespace pairbec {

// Eigenvalues of -u'' on the interval [0, d/sqrt(2)] with the Robin condition
// u'(0) = (alpha/(2*sqrt(2))) * u(0) at the origin and a Dirichlet or Neumann
// condition at the far end.  These are the transverse channels of the pair
// Hamiltonian; the Dirichlet-far ground value is the bottom of its essential
// spectrum.
//
// alpha = +infinity is a legal value and selects the exact hard-core limit
// (Dirichlet condition at 0), avoiding the ill-conditioned large-alpha root
// search.

enum class FarEnd { Dirichlet, Neumann };

struct RobinIntervalProblem {
    double alpha = 0.0;             // coupling strength, >= 0 or +inf
    double d = 1.0;                 // pair size; interval length is d/sqrt(2)
    FarEnd far_end = FarEnd::Dirichlet;
};

struct ReducedSpectrum {
    RobinIntervalProblem problem;
    std::vector<double> eigenvalues;  // eps_n = k_n^2, strictly increasing
};

// eps_0 .. eps_{n_max}.  Roots of the characteristic equation
//   Dirichlet far end: k*cos(k*L1) + c*sin(k*L1) = 0,  k*L1 in ((n+1/2)pi, (n+1)pi)
//   Neumann   far end: k*sin(k*L1) - c*cos(k*L1) = 0,  k*L1 in [n*pi, (n+1/2)pi)
// with L1 = d/sqrt(2), c = alpha/(2*sqrt(2)).  alpha = 0 and alpha = inf take
// the closed-form paths (the bracket degenerates there).
ReducedSpectrum reduced_eigenvalues(const RobinIntervalProblem& problem, int n_max);

// Bottom of the essential spectrum, eps^D_0(alpha).
double essential_spectrum_bottom(double alpha, double d);

}
