#pragma once

#include <vector>

#include "pairbec/spectrum_sample.hpp"

namespace pairbec {

// Grand-canonical statistics of the noninteracting pair gas.  Densities are
// per unit wire length; energies in 1/length^2, beta in length^2.

// Bose-Einstein occupation 1/(e^{beta (E - mu)} - 1), stable for
// beta (E - mu) both << 1 and >> 1.  Requires mu < E and beta > 0.
double bose_occupation(double E, double mu, double beta);

struct ThermoState {
    double beta = 0.0;
    double rho = 0.0;
    double L = 0.0;
    double mu_L = 0.0;                // solved chemical potential, < E_0
    std::vector<double> occupations;  // one per spectrum level
    double tail_density = 0.0;        // continuum completion above the last level
    double condensate_fraction = 0.0; // occupations[0] / (rho L)
};

// Density carried by the sample's levels at a fixed chemical potential,
// (1/L) sum_n n(E_n), optionally completed by the half-infinite-strip
// continuum estimate above the last computed level (one transverse channel
// per reduced Dirichlet eigenvalue, longitudinal mode density sqrt(2) L/pi).
double finite_volume_density(const SpectrumSample& spectrum, double mu,
                             double beta, bool include_tail = true);

// Same, but restricted to levels at or above `threshold`; the continuum
// completion always counts as above-threshold.
double above_threshold_density(const SpectrumSample& spectrum, double mu,
                               double beta, double threshold);

// Solves (1/L) sum_n n(E_n) + tail = rho for mu by bisection in
// log(E_0 - mu); the density is a strictly decreasing bijection in E_0 - mu,
// so a bracket always exists.  Residual at the solution is <= 1e-10 rho.
// Synthetic spectra without an underlying strip should pass
// include_tail = false; with the tail enabled it must come out below
// 1e-8 rho (otherwise the sample covers too few levels and this throws).
ThermoState solve_chemical_potential(const SpectrumSample& spectrum,
                                     double rho, double beta,
                                     bool include_tail = true);

// Thermodynamic-limit excited density at mu < eps_D_0(alpha):
//   rho_exc(mu) = 1/sqrt(2 pi beta) * sum_n Li_{1/2}(e^{-beta (eps_D_n - mu)}).
// n_levels <= 0 selects automatic truncation (dropped channel tail below
// 1e-12 relative, Gaussian decay in n).
double excited_density(double alpha, double d, double mu, double beta,
                       int n_levels = 0);

// rho_c = rho_exc at mu equal to the infinite-volume ground-state energy;
// finite precisely when the spectral gap eps_D_0(alpha) - E0_limit is
// positive, otherwise an input error.
double critical_density(double alpha, double d, double beta, double E0_limit);

struct CondensateSplit {
    ThermoState state;
    double below_threshold_density = 0.0;  // (1/L) sum_{E_n < threshold} n_n
    double above_threshold_density = 0.0;  // rest, including the tail
};

// Solves the chemical potential at (rho, beta) and splits the density at
// `threshold` (normally eps_D_0(alpha)).  The condensate fraction is the
// ground-level share n_0 / (rho L).
CondensateSplit condensate_split(const SpectrumSample& spectrum, double rho,
                                 double beta, double threshold);

}
