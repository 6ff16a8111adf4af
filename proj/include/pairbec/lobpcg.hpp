#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pairbec/kernels.hpp"
#include "pairbec/sparse.hpp"

namespace pairbec {

// Blocked locally optimal preconditioned conjugate gradient solver for the
// lowest k eigenpairs of A x = lambda M x with A symmetric and M symmetric
// positive definite.  Converged leading pairs are hard-locked: they leave the
// active block but stay in the orthogonalization basis.

struct LobpcgOptions {
    double tol = 1e-8;        // lock when |Ax - lambda Mx| <= tol |Mx| (1+|lambda|)
    int max_iterations = 5000;
    std::uint64_t seed = 1234;  // for the fallback random initial block
};

// Block width: k plus a buffer of slow-converging trailing columns.  The
// buffer grows with k because the top of a large block converges much more
// slowly than a fixed overhang of 5 covers.
int lobpcg_block_size(int k);

struct EigenResult {
    int n = 0;                         // problem size
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> eigenvectors;  // column-major, n rows per column
    std::vector<double> residual_norms;
    int iterations = 0;
    long long matvec_count = 0;        // columns multiplied by A
    int converged = 0;                 // pairs within tol; == eigenvalues.size() on success
};

// Iteration budget exhausted or the subspace solve broke down.  Carries the
// best available partial result so callers can still inspect the locked pairs.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, EigenResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const EigenResult& partial() const { return partial_; }

private:
    EigenResult partial_;
};

// Standard normal block, column-major n x cols, reproducible for a given seed.
std::vector<double> gaussian_block(int n, int cols, std::uint64_t seed);

// initial_block, when given, must be column-major n x lobpcg_block_size(k)
// (clamped to n).  Without it a seeded random block is used.
EigenResult lobpcg(const CsrMatrix& A, const CsrMatrix& M, int k,
                   const LobpcgOptions& options = {},
                   const kernels::SsorPreconditioner* preconditioner = nullptr,
                   const std::vector<double>* initial_block = nullptr);

}
