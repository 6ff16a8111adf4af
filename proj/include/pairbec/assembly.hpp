#pragma once

#include <vector>

#include "pairbec/mesh.hpp"
#include "pairbec/sparse.hpp"

namespace pairbec {

// P1 finite element discretization of the quadratic form
//   a_alpha(u) = integral |grad u|^2 + (alpha / (2 sqrt 2)) * integral_{x=y} u^2
// with Dirichlet conditions on x - y = d and x = L.  alpha = inf turns the
// diagonal term into a Dirichlet condition instead.

struct AssembledOperator {
    CsrMatrix stiffness;  // K
    CsrMatrix mass;       // M, symmetric positive definite
    CsrMatrix robin;      // R, boundary mass on the diagonal x = y
    CsrMatrix lhs;        // K + robin_coefficient * R
    std::vector<int> free_nodes;  // mesh node ids of the retained dofs
    double robin_coefficient = 0.0;  // alpha / (2 sqrt 2); 0 when alpha = inf
};

// With apply_boundary_mask = false all nodes are retained (pure Neumann
// variant used by the assembly identities); otherwise Dirichlet nodes, plus
// the diagonal nodes when alpha = inf, are eliminated.
AssembledOperator assemble(const StripMesh& mesh, double alpha,
                           bool apply_boundary_mask = true);

double quadratic_form(const CsrMatrix& A, const std::vector<double>& u);

// Relative weight of a state on the diagonal x = y,
//   (u^T R u / sqrt 2) / (u^T K u + u^T M u),
// a scale-invariant probe of boundary concentration.  Zero u is rejected.
double trace_ratio(const CsrMatrix& stiffness, const CsrMatrix& mass,
                   const CsrMatrix& robin, const std::vector<double>& u);

}
