#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace pairbec {

// Symmetry-reduced finite strip
//   O_L = { (x, y) : 0 <= y <= x <= L, x - y <= d }
// meshed by the structured grid (i*h, j*h), h = d/m, with right triangles
// split parallel to the diagonal so that both characteristic lines (x = y and
// x - y = d) are unions of mesh edges.

struct StripGeometry {
    double d;  // pair size
    double L;  // box size, > d
};

enum class BoundaryTag : std::uint8_t {
    DirichletPair,  // x - y = d
    DirichletBox,   // x = L
    NeumannAxis,    // y = 0, x <= d
    RobinDiag,      // x = y
};

struct BoundaryEdge {
    int a, b;
    BoundaryTag tag;
};

struct StripMesh {
    double d = 0.0;
    double L_effective = 0.0;  // L rounded up to a multiple of h
    double h = 0.0;
    int m = 0;  // subdivisions of d
    int N = 0;  // subdivisions of L_effective

    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<int, 2>> node_ij;  // structured indices, j <= i
    std::vector<std::array<int, 3>> triangles;  // counterclockwise
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<std::uint8_t> dirichlet_mask;  // x-y = d or x = L nodes

    int node_count() const { return static_cast<int>(nodes.size()); }
    int index_of(int i, int j) const;  // inverse of node_ij
    int free_count() const;
};

inline constexpr std::size_t kDefaultNodeBudget = 2'000'000;

// m >= 2; L is rounded up to the next multiple of h = d/m and reported as
// L_effective.  Throws ResourceError naming the budget when the node count
// would exceed node_budget.
StripMesh build_mesh(const StripGeometry& geometry, int m,
                     std::size_t node_budget = kDefaultNodeBudget);

// Plain-text dump, one record per line:
//   node <id> <x> <y>
//   tri <id> <a> <b> <c>
//   edge <id> <a> <b> <tag>
// preceded by '#' header lines with the counts and parameters.
void dump_mesh(const StripMesh& mesh, std::ostream& os);

}
