#include "pairbec/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pairbec/errors.hpp"

namespace pairbec {

namespace {

struct ElementPair {
    double Ke[9];
    double Me[9];
};

// Returns false on a non-positive Jacobian.  Gradient rows come from the
// inverse of the edge matrix B = [p1-p0 | p2-p0].
bool element_matrices(const std::array<double, 2>& p0,
                      const std::array<double, 2>& p1,
                      const std::array<double, 2>& p2, ElementPair& out) {
    const double b00 = p1[0] - p0[0], b01 = p2[0] - p0[0];
    const double b10 = p1[1] - p0[1], b11 = p2[1] - p0[1];
    const double det = b00 * b11 - b01 * b10;
    if (!(det > 0.0)) return false;
    const double area = 0.5 * det;
    double G[3][2];
    G[1][0] = b11 / det;
    G[1][1] = -b01 / det;
    G[2][0] = -b10 / det;
    G[2][1] = b00 / det;
    G[0][0] = -G[1][0] - G[2][0];
    G[0][1] = -G[1][1] - G[2][1];
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            out.Ke[a * 3 + b] = area * (G[a][0] * G[b][0] + G[a][1] * G[b][1]);
            out.Me[a * 3 + b] = (a == b ? area / 6.0 : area / 12.0);
        }
    return true;
}

}  // namespace

AssembledOperator assemble(const StripMesh& mesh, double alpha,
                           bool apply_boundary_mask) {
    if (std::isnan(alpha) || alpha < 0.0)
        throw InputError("interaction strength alpha must be >= 0 or inf");
    const bool hard_wall = std::isinf(alpha);

    const int n = mesh.node_count();
    const std::size_t nt = mesh.triangles.size();
    std::vector<ElementPair> elems(nt);
    long long bad = -1;
    // Element matrices are independent; the scatter below stays serial so the
    // accumulation order (triangle-major) is fixed.
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < static_cast<long long>(nt); ++t) {
        const auto& tri = mesh.triangles[t];
        if (!element_matrices(mesh.nodes[tri[0]], mesh.nodes[tri[1]],
                              mesh.nodes[tri[2]], elems[t])) {
#pragma omp critical
            if (bad < 0 || t < bad) bad = t;
        }
    }
    if (bad >= 0)
        throw std::runtime_error("internal error: degenerate triangle " +
                                 std::to_string(bad) + " in assembly");

    CooBuilder kb(n), mb(n), rb(n);
    kb.reserve(9 * nt);
    mb.reserve(9 * nt);
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                kb.add(tri[a], tri[b], elems[t].Ke[a * 3 + b]);
                mb.add(tri[a], tri[b], elems[t].Me[a * 3 + b]);
            }
    }
    for (const BoundaryEdge& e : mesh.boundary_edges) {
        if (e.tag != BoundaryTag::RobinDiag) continue;
        const double dx = mesh.nodes[e.b][0] - mesh.nodes[e.a][0];
        const double dy = mesh.nodes[e.b][1] - mesh.nodes[e.a][1];
        const double len = std::sqrt(dx * dx + dy * dy);
        rb.add(e.a, e.a, len / 3.0);
        rb.add(e.b, e.b, len / 3.0);
        rb.add(e.a, e.b, len / 6.0);
        rb.add(e.b, e.a, len / 6.0);
    }

    AssembledOperator op;
    op.robin_coefficient = hard_wall ? 0.0 : alpha / (2.0 * std::sqrt(2.0));

    CsrMatrix K = kb.compressed();
    CsrMatrix M = mb.compressed();
    CsrMatrix R = rb.compressed();

    if (apply_boundary_mask) {
        std::vector<std::uint8_t> keep(n, 1);
        for (int i = 0; i < n; ++i) {
            if (mesh.dirichlet_mask[i]) keep[i] = 0;
            if (hard_wall && mesh.node_ij[i][0] == mesh.node_ij[i][1])
                keep[i] = 0;
        }
        for (int i = 0; i < n; ++i)
            if (keep[i]) op.free_nodes.push_back(i);
        op.stiffness = restrict_matrix(K, keep);
        op.mass = restrict_matrix(M, keep);
        op.robin = restrict_matrix(R, keep);
    } else {
        op.free_nodes.resize(n);
        for (int i = 0; i < n; ++i) op.free_nodes[i] = i;
        op.stiffness = std::move(K);
        op.mass = std::move(M);
        op.robin = std::move(R);
    }
    op.lhs = add_scaled(op.stiffness, op.robin_coefficient, op.robin);
    return op;
}

double quadratic_form(const CsrMatrix& A, const std::vector<double>& u) {
    if (static_cast<int>(u.size()) != A.n)
        throw InputError("quadratic form: vector length does not match matrix");
    double s = 0.0;
    for (int r = 0; r < A.n; ++r) {
        double row = 0.0;
        for (int p = A.row_ptr[r]; p < A.row_ptr[r + 1]; ++p)
            row += A.val[p] * u[A.col[p]];
        s += u[r] * row;
    }
    return s;
}

double trace_ratio(const CsrMatrix& stiffness, const CsrMatrix& mass,
                   const CsrMatrix& robin, const std::vector<double>& u) {
    double norm2 = 0.0;
    for (double x : u) norm2 += x * x;
    if (!(norm2 > 0.0))
        throw InputError("trace ratio is undefined for the zero vector");
    const double num = quadratic_form(robin, u) / std::sqrt(2.0);
    const double den = quadratic_form(stiffness, u) + quadratic_form(mass, u);
    return num / den;
}

}  // namespace pairbec
