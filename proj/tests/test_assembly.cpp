#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "pairbec/assembly.hpp"
#include "pairbec/errors.hpp"
#include "pairbec/kernels.hpp"
#include "pairbec/mesh.hpp"

using namespace pairbec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> random_vector(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

bool csr_symmetric(const CsrMatrix& A) {
    for (int r = 0; r < A.n; ++r)
        for (int p = A.row_ptr[r]; p < A.row_ptr[r + 1]; ++p) {
            const int c = A.col[p];
            bool found = false;
            for (int q = A.row_ptr[c]; q < A.row_ptr[c + 1]; ++q)
                if (A.col[q] == r) {
                    if (A.val[q] != A.val[p]) return false;
                    found = true;
                }
            if (!found) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("form identities on the documented d=1, L=2, m=2 mesh") {
    const StripMesh mesh = build_mesh({1.0, 2.0}, 2);
    const AssembledOperator op = assemble(mesh, 0.0, false);
    const std::vector<double> ones(mesh.node_count(), 1.0);

    // constants are in the kernel of the stiffness form
    CHECK(std::abs(quadratic_form(op.stiffness, ones)) < 1e-13);
    // 1'M1 = area of the reduced strip = d L - d^2/2
    CHECK(quadratic_form(op.mass, ones) == doctest::Approx(1.5).epsilon(1e-13));
    // 1'R1 = arclength of the diagonal = sqrt(2) L
    CHECK(quadratic_form(op.robin, ones) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
    // boundary ratio of the constant function: (sqrt2 L / sqrt2) / area
    CHECK(trace_ratio(op.stiffness, op.mass, op.robin, ones) ==
          doctest::Approx(2.0 / 1.5).epsilon(1e-13));
}

TEST_CASE("form identities off the unit geometry") {
    const StripMesh mesh = build_mesh({0.7, 3.0}, 7);
    const AssembledOperator op = assemble(mesh, 2.0, false);
    const std::vector<double> ones(mesh.node_count(), 1.0);
    CHECK(quadratic_form(op.mass, ones) ==
          doctest::Approx(0.7 * 3.0 - 0.5 * 0.49).epsilon(1e-13));
    CHECK(quadratic_form(op.robin, ones) ==
          doctest::Approx(std::sqrt(2.0) * 3.0).epsilon(1e-13));
    CHECK(std::abs(quadratic_form(op.stiffness, ones)) < 1e-12);
}

TEST_CASE("assembled matrices are exactly symmetric") {
    const StripMesh mesh = build_mesh({1.0, 3.0}, 4);
    const AssembledOperator op = assemble(mesh, 1.5, true);
    CHECK(csr_symmetric(op.stiffness));
    CHECK(csr_symmetric(op.mass));
    CHECK(csr_symmetric(op.robin));
    CHECK(csr_symmetric(op.lhs));
}

TEST_CASE("left-hand side combines stiffness and the diagonal boundary term") {
    const StripMesh mesh = build_mesh({1.0, 3.0}, 4);
    const double alpha = 3.0;
    const AssembledOperator op = assemble(mesh, alpha, true);
    CHECK(op.robin_coefficient ==
          doctest::Approx(alpha / (2.0 * std::sqrt(2.0))).epsilon(1e-15));
    const auto u = random_vector(op.lhs.n, 11);
    CHECK(quadratic_form(op.lhs, u) ==
          doctest::Approx(quadratic_form(op.stiffness, u) +
                          op.robin_coefficient * quadratic_form(op.robin, u))
              .epsilon(1e-12));
}

TEST_CASE("constraint mask removes the Dirichlet lines") {
    const StripMesh mesh = build_mesh({1.0, 3.0}, 4);
    const AssembledOperator op = assemble(mesh, 1.0, true);
    CHECK(static_cast<int>(op.free_nodes.size()) == mesh.free_count());
    CHECK(op.stiffness.n == mesh.free_count());
    for (int q : op.free_nodes) CHECK(!mesh.dirichlet_mask[q]);
    // mass stays positive definite on the free nodes
    const auto u = random_vector(op.mass.n, 5);
    CHECK(quadratic_form(op.mass, u) > 0.0);
}

TEST_CASE("hard-wall flag constrains the diagonal instead of a Robin term") {
    const StripMesh mesh = build_mesh({1.0, 3.0}, 4);
    const AssembledOperator op = assemble(mesh, kInf, true);
    CHECK(op.robin_coefficient == 0.0);
    for (int q : op.free_nodes) {
        CHECK(!mesh.dirichlet_mask[q]);
        CHECK(mesh.node_ij[q][0] != mesh.node_ij[q][1]);
    }
    const std::vector<double> ones(op.robin.n, 1.0);
    CHECK(quadratic_form(op.robin, ones) == 0.0);
}

TEST_CASE("degenerate triangles are reported by index") {
    StripMesh mesh;
    mesh.d = 1.0;
    mesh.L_effective = 1.0;
    mesh.h = 1.0;
    mesh.m = 2;
    mesh.N = 1;
    mesh.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    mesh.node_ij = {{0, 0}, {1, 0}, {1, 1}};
    mesh.triangles = {{0, 2, 1}};  // clockwise: negative Jacobian
    mesh.dirichlet_mask = {0, 0, 0};
    CHECK_THROWS_WITH_AS(assemble(mesh, 0.0, false),
                         doctest::Contains("degenerate triangle 0"),
                         std::runtime_error);
}

TEST_CASE("assembly input validation") {
    const StripMesh mesh = build_mesh({1.0, 2.0}, 2);
    CHECK_THROWS_AS(assemble(mesh, -1.0), InputError);
    CHECK_THROWS_AS(assemble(mesh, std::nan("")), InputError);
    const AssembledOperator op = assemble(mesh, 0.0, false);
    CHECK_THROWS_AS(quadratic_form(op.mass, std::vector<double>(3, 1.0)),
                    InputError);
    CHECK_THROWS_AS(trace_ratio(op.stiffness, op.mass, op.robin,
                                std::vector<double>(op.mass.n, 0.0)),
                    InputError);
}

TEST_CASE("sparse products match naive dense arithmetic") {
    const StripMesh mesh = build_mesh({1.0, 2.0}, 2);
    const AssembledOperator op = assemble(mesh, 1.0, true);
    const CsrMatrix& A = op.lhs;
    const int n = A.n;
    const auto x = random_vector(n, 3);
    std::vector<double> y(n);
    kernels::spmv(A, x.data(), y.data());
    for (int r = 0; r < n; ++r) {
        double expect = 0.0;
        for (int p = A.row_ptr[r]; p < A.row_ptr[r + 1]; ++p)
            expect += A.val[p] * x[A.col[p]];
        CHECK(y[r] == doctest::Approx(expect).epsilon(1e-14));
    }

    const int nb = 3;
    const auto X = random_vector(n * nb, 4);
    std::vector<double> Y(n * nb);
    kernels::spmm(A, X.data(), nb, Y.data());
    for (int c = 0; c < nb; ++c) {
        std::vector<double> xc(X.begin() + c * n, X.begin() + (c + 1) * n);
        std::vector<double> yc(n);
        kernels::spmv(A, xc.data(), yc.data());
        for (int r = 0; r < n; ++r) CHECK(Y[c * n + r] == yc[r]);
    }
}

TEST_CASE("dense block kernels match naive loops") {
    const int n = 23, nx = 3, ny = 2;
    const auto X = random_vector(n * nx, 7);
    const auto Y = random_vector(n * ny, 8);
    std::vector<double> C(nx * ny);
    kernels::gram(X.data(), nx, Y.data(), ny, n, C.data());
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) {
            double expect = 0.0;
            for (int r = 0; r < n; ++r) expect += X[a * n + r] * Y[b * n + r];
            CHECK(C[b * nx + a] == doctest::Approx(expect).epsilon(1e-13));
        }

    std::vector<double> Z(n * ny);
    kernels::gemm(X.data(), nx, C.data(), ny, n, Z.data());
    for (int b = 0; b < ny; ++b)
        for (int r = 0; r < n; ++r) {
            double expect = 0.0;
            for (int a = 0; a < nx; ++a) expect += X[a * n + r] * C[b * nx + a];
            CHECK(Z[b * n + r] == doctest::Approx(expect).epsilon(1e-13));
        }

    const auto s = random_vector(ny, 9);
    std::vector<double> R(n * ny);
    kernels::residual(Z.data(), Y.data(), s.data(), ny, n, R.data());
    for (int b = 0; b < ny; ++b)
        for (int r = 0; r < n; ++r)
            CHECK(R[b * n + r] == Z[b * n + r] - s[b] * Y[b * n + r]);

    std::vector<double> norms(ny);
    kernels::column_norms(R.data(), ny, n, norms.data());
    for (int b = 0; b < ny; ++b) {
        double expect = 0.0;
        for (int r = 0; r < n; ++r) expect += R[b * n + r] * R[b * n + r];
        CHECK(norms[b] == doctest::Approx(std::sqrt(expect)).epsilon(1e-13));
    }
}

TEST_CASE("openmp variants are bitwise identical to the serial reference") {
    const StripMesh mesh = build_mesh({1.0, 8.0}, 6);
    const AssembledOperator op = assemble(mesh, 1.0, true);
    const CsrMatrix& A = op.lhs;
    const int n = A.n, nb = 7;
    const auto X = random_vector(n * nb, 21);
    const auto s = random_vector(nb, 22);
    std::vector<double> a1(n * nb), a2(n * nb), c1(nb * nb), c2(nb * nb);
    std::vector<double> v1(nb), v2(nb);

    kernels::spmm_serial(A, X.data(), nb, a1.data());
    kernels::spmm_omp(A, X.data(), nb, a2.data());
    CHECK(std::memcmp(a1.data(), a2.data(), a1.size() * sizeof(double)) == 0);

    kernels::gram_serial(X.data(), nb, a1.data(), nb, n, c1.data());
    kernels::gram_omp(X.data(), nb, a1.data(), nb, n, c2.data());
    CHECK(std::memcmp(c1.data(), c2.data(), c1.size() * sizeof(double)) == 0);

    kernels::gemm_serial(X.data(), nb, c1.data(), nb, n, a1.data());
    kernels::gemm_omp(X.data(), nb, c1.data(), nb, n, a2.data());
    CHECK(std::memcmp(a1.data(), a2.data(), a1.size() * sizeof(double)) == 0);

    kernels::residual_serial(a1.data(), X.data(), s.data(), nb, n, a1.data());
    kernels::residual_omp(a2.data(), X.data(), s.data(), nb, n, a2.data());
    CHECK(std::memcmp(a1.data(), a2.data(), a1.size() * sizeof(double)) == 0);

    kernels::column_norms_serial(X.data(), nb, n, v1.data());
    kernels::column_norms_omp(X.data(), nb, n, v2.data());
    CHECK(std::memcmp(v1.data(), v2.data(), v1.size() * sizeof(double)) == 0);

    const kernels::SsorPreconditioner prec(A);
    prec.apply_serial(X.data(), nb, a1.data());
    prec.apply_omp(X.data(), nb, a2.data());
    CHECK(std::memcmp(a1.data(), a2.data(), a1.size() * sizeof(double)) == 0);

    const kernels::JacobiPreconditioner jac(A.diagonal());
    jac.apply_serial(X.data(), nb, a1.data());
    jac.apply_omp(X.data(), nb, a2.data());
    CHECK(std::memcmp(a1.data(), a2.data(), a1.size() * sizeof(double)) == 0);
}

TEST_CASE("symmetric sweep preconditioner solves its factored system") {
    const StripMesh mesh = build_mesh({1.0, 3.0}, 3);
    const AssembledOperator op = assemble(mesh, 1.0, true);
    const CsrMatrix& A = op.lhs;
    const int n = A.n;
    const auto r = random_vector(n, 31);
    std::vector<double> y(n);
    const kernels::SsorPreconditioner prec(A);
    prec.apply(r.data(), 1, y.data());

    // reconstruct (D+L) D^{-1} (D+U) y and compare with r
    const auto diag = A.diagonal();
    std::vector<double> upper(n, 0.0), z(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p)
            if (A.col[p] >= i) s += A.val[p] * y[A.col[p]];
        upper[i] = s;  // (D+U) y
    }
    for (int i = 0; i < n; ++i) z[i] = upper[i] / diag[i];
    for (int i = 0; i < n; ++i) {
        double s = diag[i] * z[i];
        for (int p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p)
            if (A.col[p] < i) s += A.val[p] * z[A.col[p]];
        CHECK(s == doctest::Approx(r[i]).epsilon(1e-11));
    }

    // diagonal preconditioner divides by the diagonal
    const kernels::JacobiPreconditioner jac(diag);
    jac.apply(r.data(), 1, y.data());
    for (int i = 0; i < n; ++i)
        CHECK(y[i] == doctest::Approx(r[i] / diag[i]).epsilon(1e-15));
}
