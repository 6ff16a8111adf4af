#pragma once

#include <vector>

#include "pairbec/sparse.hpp"

// Hot numerical kernels.  Every kernel has a plain serial reference
// implementation (ground truth for tests and the benchmark) and an OpenMP
// variant whose work decomposition assigns each output entry to exactly one
// thread with the serial per-entry summation order, so results are identical
// to the serial path for any thread count.  The unsuffixed names dispatch to
// OpenMP when compiled in, serial otherwise.
//
// Dense blocks are column-major with leading dimension n (the vector length).

namespace pairbec::kernels {

// y = A x
void spmv_serial(const CsrMatrix& A, const double* x, double* y);
void spmv_omp(const CsrMatrix& A, const double* x, double* y);
void spmv(const CsrMatrix& A, const double* x, double* y);

// Y = A X, X and Y are n x nb
void spmm_serial(const CsrMatrix& A, const double* X, int nb, double* Y);
void spmm_omp(const CsrMatrix& A, const double* X, int nb, double* Y);
void spmm(const CsrMatrix& A, const double* X, int nb, double* Y);

// C = X^T Y; X is n x nx, Y is n x ny, C is nx x ny column-major
void gram_serial(const double* X, int nx, const double* Y, int ny, int n, double* C);
void gram_omp(const double* X, int nx, const double* Y, int ny, int n, double* C);
void gram(const double* X, int nx, const double* Y, int ny, int n, double* C);

// Y = X C; X is n x q, C is q x p column-major, Y is n x p
void gemm_serial(const double* X, int q, const double* C, int p, int n, double* Y);
void gemm_omp(const double* X, int q, const double* C, int p, int n, double* Y);
void gemm(const double* X, int q, const double* C, int p, int n, double* Y);

// R = Y - X * diag(s), all n x nb
void residual_serial(const double* Y, const double* X, const double* s, int nb, int n, double* R);
void residual_omp(const double* Y, const double* X, const double* s, int nb, int n, double* R);
void residual(const double* Y, const double* X, const double* s, int nb, int n, double* R);

// Euclidean norm of each column of X (n x nb)
void column_norms_serial(const double* X, int nb, int n, double* out);
void column_norms_omp(const double* X, int nb, int n, double* out);
void column_norms(const double* X, int nb, int n, double* out);

// Symmetric Gauss-Seidel (SSOR, omega = 1) preconditioner built from a CSR
// matrix: apply() solves (D+L) D^{-1} (D+U) y = r columnwise.  Row sweeps are
// inherently sequential; the OpenMP variant parallelizes over columns of the
// block, which keeps results bitwise identical to the serial path.
class SsorPreconditioner {
public:
    explicit SsorPreconditioner(const CsrMatrix& A);

    void apply_serial(const double* R, int nb, double* Y) const;
    void apply_omp(const double* R, int nb, double* Y) const;
    void apply(const double* R, int nb, double* Y) const;

    int size() const { return A_.n; }

private:
    CsrMatrix A_;               // full rows; diagonal positions cached
    std::vector<int> diag_pos_;
    std::vector<double> inv_diag_;
};

// Jacobi preconditioner: y = r / diag.
class JacobiPreconditioner {
public:
    explicit JacobiPreconditioner(std::vector<double> diag);

    void apply_serial(const double* R, int nb, double* Y) const;
    void apply_omp(const double* R, int nb, double* Y) const;
    void apply(const double* R, int nb, double* Y) const;

    int size() const { return static_cast<int>(inv_diag_.size()); }

private:
    std::vector<double> inv_diag_;
};

}
