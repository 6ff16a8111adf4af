#include "pairbec/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pairbec::kernels {

namespace {
inline std::size_t idx(int r, int c, int n) {
    return static_cast<std::size_t>(c) * static_cast<std::size_t>(n) + static_cast<std::size_t>(r);
}
}  // namespace

void spmv_serial(const CsrMatrix& A, const double* x, double* y) {
    for (int r = 0; r < A.n; ++r) {
        double s = 0.0;
        for (int p = A.row_ptr[r]; p < A.row_ptr[r + 1]; ++p) s += A.val[p] * x[A.col[p]];
        y[r] = s;
    }
}

void spmv_omp(const CsrMatrix& A, const double* x, double* y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < A.n; ++r) {
        double s = 0.0;
        for (int p = A.row_ptr[r]; p < A.row_ptr[r + 1]; ++p) s += A.val[p] * x[A.col[p]];
        y[r] = s;
    }
}

void spmv(const CsrMatrix& A, const double* x, double* y) {
#ifdef _OPENMP
    spmv_omp(A, x, y);
#else
    spmv_serial(A, x, y);
#endif
}

void spmm_serial(const CsrMatrix& A, const double* X, int nb, double* Y) {
    const int n = A.n;
    for (int r = 0; r < n; ++r) {
        for (int j = 0; j < nb; ++j) Y[idx(r, j, n)] = 0.0;
        for (int p = A.row_ptr[r]; p < A.row_ptr[r + 1]; ++p) {
            const double a = A.val[p];
            const int c = A.col[p];
            for (int j = 0; j < nb; ++j) Y[idx(r, j, n)] += a * X[idx(c, j, n)];
        }
    }
}

void spmm_omp(const CsrMatrix& A, const double* X, int nb, double* Y) {
    const int n = A.n;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < n; ++r) {
        for (int j = 0; j < nb; ++j) Y[idx(r, j, n)] = 0.0;
        for (int p = A.row_ptr[r]; p < A.row_ptr[r + 1]; ++p) {
            const double a = A.val[p];
            const int c = A.col[p];
            for (int j = 0; j < nb; ++j) Y[idx(r, j, n)] += a * X[idx(c, j, n)];
        }
    }
}

void spmm(const CsrMatrix& A, const double* X, int nb, double* Y) {
#ifdef _OPENMP
    spmm_omp(A, X, nb, Y);
#else
    spmm_serial(A, X, nb, Y);
#endif
}

void gram_serial(const double* X, int nx, const double* Y, int ny, int n, double* C) {
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double s = 0.0;
            const double* xi = X + idx(0, i, n);
            const double* yj = Y + idx(0, j, n);
            for (int r = 0; r < n; ++r) s += xi[r] * yj[r];
            C[static_cast<std::size_t>(j) * nx + i] = s;
        }
}

void gram_omp(const double* X, int nx, const double* Y, int ny, int n, double* C) {
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
#endif
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double s = 0.0;
            const double* xi = X + idx(0, i, n);
            const double* yj = Y + idx(0, j, n);
            for (int r = 0; r < n; ++r) s += xi[r] * yj[r];
            C[static_cast<std::size_t>(j) * nx + i] = s;
        }
}

void gram(const double* X, int nx, const double* Y, int ny, int n, double* C) {
#ifdef _OPENMP
    gram_omp(X, nx, Y, ny, n, C);
#else
    gram_serial(X, nx, Y, ny, n, C);
#endif
}

void gemm_serial(const double* X, int q, const double* C, int p, int n, double* Y) {
    for (int j = 0; j < p; ++j) {
        double* yj = Y + idx(0, j, n);
        for (int r = 0; r < n; ++r) yj[r] = 0.0;
        for (int k = 0; k < q; ++k) {
            const double c = C[static_cast<std::size_t>(j) * q + k];
            const double* xk = X + idx(0, k, n);
            for (int r = 0; r < n; ++r) yj[r] += c * xk[r];
        }
    }
}

void gemm_omp(const double* X, int q, const double* C, int p, int n, double* Y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < p; ++j) {
        double* yj = Y + idx(0, j, n);
        for (int r = 0; r < n; ++r) yj[r] = 0.0;
        for (int k = 0; k < q; ++k) {
            const double c = C[static_cast<std::size_t>(j) * q + k];
            const double* xk = X + idx(0, k, n);
            for (int r = 0; r < n; ++r) yj[r] += c * xk[r];
        }
    }
}

void gemm(const double* X, int q, const double* C, int p, int n, double* Y) {
#ifdef _OPENMP
    gemm_omp(X, q, C, p, n, Y);
#else
    gemm_serial(X, q, C, p, n, Y);
#endif
}

void residual_serial(const double* Y, const double* X, const double* s, int nb, int n, double* R) {
    for (int j = 0; j < nb; ++j) {
        const double sj = s[j];
        for (int r = 0; r < n; ++r) R[idx(r, j, n)] = Y[idx(r, j, n)] - sj * X[idx(r, j, n)];
    }
}

void residual_omp(const double* Y, const double* X, const double* s, int nb, int n, double* R) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < nb; ++j) {
        const double sj = s[j];
        for (int r = 0; r < n; ++r) R[idx(r, j, n)] = Y[idx(r, j, n)] - sj * X[idx(r, j, n)];
    }
}

void residual(const double* Y, const double* X, const double* s, int nb, int n, double* R) {
#ifdef _OPENMP
    residual_omp(Y, X, s, nb, n, R);
#else
    residual_serial(Y, X, s, nb, n, R);
#endif
}

void column_norms_serial(const double* X, int nb, int n, double* out) {
    for (int j = 0; j < nb; ++j) {
        double s = 0.0;
        const double* xj = X + idx(0, j, n);
        for (int r = 0; r < n; ++r) s += xj[r] * xj[r];
        out[j] = std::sqrt(s);
    }
}

void column_norms_omp(const double* X, int nb, int n, double* out) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < nb; ++j) {
        double s = 0.0;
        const double* xj = X + idx(0, j, n);
        for (int r = 0; r < n; ++r) s += xj[r] * xj[r];
        out[j] = std::sqrt(s);
    }
}

void column_norms(const double* X, int nb, int n, double* out) {
#ifdef _OPENMP
    column_norms_omp(X, nb, n, out);
#else
    column_norms_serial(X, nb, n, out);
#endif
}

SsorPreconditioner::SsorPreconditioner(const CsrMatrix& A) : A_(A) {
    diag_pos_.assign(static_cast<std::size_t>(A_.n), -1);
    inv_diag_.assign(static_cast<std::size_t>(A_.n), 0.0);
    for (int r = 0; r < A_.n; ++r)
        for (int p = A_.row_ptr[r]; p < A_.row_ptr[r + 1]; ++p)
            if (A_.col[p] == r) {
                diag_pos_[r] = p;
                inv_diag_[r] = 1.0 / A_.val[p];
            }
    for (int r = 0; r < A_.n; ++r)
        if (diag_pos_[r] < 0) throw std::runtime_error("SsorPreconditioner: zero diagonal row");
}

namespace {
// One column of (D+L) D^{-1} (D+U) y = r.  CSR columns are sorted, so entries
// before diag_pos are strictly lower, after are strictly upper.
void ssor_column(const CsrMatrix& A, const std::vector<int>& diag_pos,
                 const std::vector<double>& inv_diag, const double* r, double* y,
                 std::vector<double>& work) {
    const int n = A.n;
    // forward: (D+L) z = r
    for (int i = 0; i < n; ++i) {
        double s = r[i];
        for (int p = A.row_ptr[i]; p < diag_pos[i]; ++p) s -= A.val[p] * work[A.col[p]];
        work[i] = s * inv_diag[i];
    }
    // scale by D, then backward: (D+U) y = D z  ->  y_i = z_i - D^{-1} U y
    for (int i = n - 1; i >= 0; --i) {
        double s = 0.0;
        for (int p = diag_pos[i] + 1; p < A.row_ptr[i + 1]; ++p) s += A.val[p] * y[A.col[p]];
        y[i] = work[i] - s * inv_diag[i];
    }
}
}  // namespace

void SsorPreconditioner::apply_serial(const double* R, int nb, double* Y) const {
    std::vector<double> work(static_cast<std::size_t>(A_.n));
    for (int j = 0; j < nb; ++j)
        ssor_column(A_, diag_pos_, inv_diag_, R + idx(0, j, A_.n), Y + idx(0, j, A_.n), work);
}

void SsorPreconditioner::apply_omp(const double* R, int nb, double* Y) const {
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<double> work(static_cast<std::size_t>(A_.n));
#pragma omp for schedule(static)
        for (int j = 0; j < nb; ++j)
            ssor_column(A_, diag_pos_, inv_diag_, R + idx(0, j, A_.n), Y + idx(0, j, A_.n), work);
    }
#else
    apply_serial(R, nb, Y);
#endif
}

void SsorPreconditioner::apply(const double* R, int nb, double* Y) const {
#ifdef _OPENMP
    apply_omp(R, nb, Y);
#else
    apply_serial(R, nb, Y);
#endif
}

JacobiPreconditioner::JacobiPreconditioner(std::vector<double> diag) : inv_diag_(std::move(diag)) {
    for (double& v : inv_diag_) {
        if (v == 0.0) throw std::runtime_error("JacobiPreconditioner: zero diagonal");
        v = 1.0 / v;
    }
}

void JacobiPreconditioner::apply_serial(const double* R, int nb, double* Y) const {
    const int n = size();
    for (int j = 0; j < nb; ++j)
        for (int r = 0; r < n; ++r) Y[idx(r, j, n)] = R[idx(r, j, n)] * inv_diag_[r];
}

void JacobiPreconditioner::apply_omp(const double* R, int nb, double* Y) const {
    const int n = size();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < nb; ++j)
        for (int r = 0; r < n; ++r) Y[idx(r, j, n)] = R[idx(r, j, n)] * inv_diag_[r];
}

void JacobiPreconditioner::apply(const double* R, int nb, double* Y) const {
#ifdef _OPENMP
    apply_omp(R, nb, Y);
#else
    apply_serial(R, nb, Y);
#endif
}

}
