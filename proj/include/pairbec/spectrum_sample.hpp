#pragma once

#include <vector>

namespace pairbec {

// Converged low-lying spectrum of one strip problem, together with the
// parameters that produced it.  L and h are the effective (post-rounding)
// values of the mesh.
struct SpectrumSample {
    double alpha = 0.0;  // inf encodes the hard-wall diagonal
    double d = 0.0;
    double L = 0.0;
    double h = 0.0;
    int m = 0;
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> residual_norms;
    int iterations = 0;
    long long matvec_count = 0;
};

}
