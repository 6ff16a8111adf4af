#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pairbec/assembly.hpp"
#include "pairbec/config.hpp"
#include "pairbec/lobpcg.hpp"
#include "pairbec/mesh.hpp"
#include "pairbec/spectrum_sample.hpp"
#include "pairbec/table.hpp"

namespace pairbec {

// One strip eigenproblem: geometry, mesh resolution, and how many pairs.
struct SpectrumRequest {
    double alpha = 0.0;
    double d = 1.0;
    double L = 20.0;
    int m = 10;
    int k = 8;
    double tol = 1e-8;
    std::uint64_t seed = 1234;
    int max_iterations = 5000;
    std::size_t node_budget = kDefaultNodeBudget;
};

struct SpectrumComputation {
    StripMesh mesh;
    AssembledOperator op;
    EigenResult eigen;      // eigenvectors over op.free_nodes
    SpectrumSample sample;
};

// Initial block for the strip problem: longitudinal cosines times the first
// transverse channel profile, plus tiny seeded noise to split degeneracies.
// Column-major over the free nodes, nb columns.
std::vector<double> structured_initial_block(const StripMesh& mesh,
                                             const std::vector<int>& free_nodes,
                                             double alpha, int nb,
                                             std::uint64_t seed);

// Mesh + assembly + preconditioned block eigensolve.  The preconditioner is
// symmetric Gauss-Seidel on K_alpha + sigma M with sigma = 1e-3 eps_D_0(alpha).
SpectrumComputation compute_spectrum_full(const SpectrumRequest& request);
SpectrumSample compute_spectrum(const SpectrumRequest& request);

// Doubles k until the spectrum reaches past `energy` (or the full system
// size); returns the last sample.
SpectrumSample spectrum_up_to(SpectrumRequest request, double energy);

// Number of eigenvalues strictly below threshold - safety margin, where the
// margin is max(tol (1+threshold), discretization_margin).  Thresholds <= 0
// trivially give 0.
int count_below(const SpectrumRequest& request, double threshold,
                double discretization_margin = 0.0);

// Ground-state energy estimate: Richardson over (m/2, m) (or (m, 2m) for odd
// m) at each box size, then an Aitken limit over the last three box sizes
// when the L list has at least three entries.
struct GroundStateEstimate {
    double raw = 0.0;    // finest-mesh value at the largest L
    double value = 0.0;  // extrapolated
    double margin = 0.0; // |Richardson correction| + |Aitken correction|
};
GroundStateEstimate extrapolate_ground_state(const RunConfig& config,
                                             double alpha);

// A command's table plus any violated verification assertions (CLI exit 4).
struct ExperimentResult {
    Table table;
    std::vector<std::string> check_failures;
};

ExperimentResult run_spectrum1d(const RunConfig& config);
ExperimentResult run_bounds(const RunConfig& config);
ExperimentResult run_alpha_sweep(const RunConfig& config);
ExperimentResult run_count_vs_L(const RunConfig& config);
ExperimentResult run_condensate(const RunConfig& config);
ExperimentResult run_trace_probe(const RunConfig& config);

}
