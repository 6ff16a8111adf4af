#include "pairbec/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "pairbec/errors.hpp"

namespace pairbec {

int StripMesh::index_of(int i, int j) const {
    // Nodes are ordered by column i, then j; column i holds min(i, m) + 1
    // nodes.  The first m+1 columns form a triangular block.
    if (i <= m) return i * (i + 1) / 2 + j;
    return (m + 1) * (m + 2) / 2 + (i - m - 1) * (m + 1) + (j - (i - m));
}

int StripMesh::free_count() const {
    int free = 0;
    for (std::uint8_t masked : dirichlet_mask)
        if (!masked) ++free;
    return free;
}

StripMesh build_mesh(const StripGeometry& geometry, int m,
                     std::size_t node_budget) {
    const double d = geometry.d;
    const double L = geometry.L;
    if (!(d > 0.0) || !std::isfinite(d))
        throw InputError("pair size d must be positive and finite");
    if (!(L > d) || !std::isfinite(L))
        throw InputError("box size L must exceed the pair size d");
    if (m < 2) throw InputError("mesh subdivision m must be at least 2");

    StripMesh mesh;
    mesh.d = d;
    mesh.m = m;
    mesh.h = d / m;
    // Round L up to a multiple of h; the slack guards exact multiples.
    mesh.N = static_cast<int>(std::ceil(L / mesh.h - 1e-9));
    if (mesh.N <= m) mesh.N = m + 1;
    mesh.L_effective = mesh.N * mesh.h;

    const long long N = mesh.N;
    const long long nn = (N + 1) * (m + 1) - static_cast<long long>(m) * (m + 1) / 2;
    if (nn > static_cast<long long>(node_budget))
        throw ResourceError("mesh would need " + std::to_string(nn) +
                            " nodes, exceeding the node budget of " +
                            std::to_string(node_budget));

    mesh.nodes.reserve(nn);
    mesh.node_ij.reserve(nn);
    mesh.dirichlet_mask.reserve(nn);
    for (int i = 0; i <= mesh.N; ++i) {
        const int j_lo = i > m ? i - m : 0;
        for (int j = j_lo; j <= i; ++j) {
            mesh.nodes.push_back({i * mesh.h, j * mesh.h});
            mesh.node_ij.push_back({i, j});
            mesh.dirichlet_mask.push_back(i - j == m || i == mesh.N ? 1 : 0);
        }
    }

    // Each grid cell splits parallel to the diagonal x = y, so both x = y and
    // x - y = d stay unions of edges.  Orientation is counterclockwise.
    for (int i = 0; i < mesh.N; ++i) {
        const int j_lo = i > m ? i - m : 0;
        for (int j = j_lo; j <= i; ++j) {
            if (i - j <= m - 1)
                mesh.triangles.push_back({mesh.index_of(i, j),
                                          mesh.index_of(i + 1, j),
                                          mesh.index_of(i + 1, j + 1)});
            if (j < i)
                mesh.triangles.push_back({mesh.index_of(i, j),
                                          mesh.index_of(i + 1, j + 1),
                                          mesh.index_of(i, j + 1)});
        }
    }

    for (int i = 0; i < m; ++i)
        mesh.boundary_edges.push_back(
            {mesh.index_of(i, 0), mesh.index_of(i + 1, 0), BoundaryTag::NeumannAxis});
    for (int i = 0; i < mesh.N; ++i)
        mesh.boundary_edges.push_back(
            {mesh.index_of(i, i), mesh.index_of(i + 1, i + 1), BoundaryTag::RobinDiag});
    for (int i = m; i < mesh.N; ++i)
        mesh.boundary_edges.push_back({mesh.index_of(i, i - m),
                                       mesh.index_of(i + 1, i + 1 - m),
                                       BoundaryTag::DirichletPair});
    for (int j = mesh.N - m; j < mesh.N; ++j)
        mesh.boundary_edges.push_back({mesh.index_of(mesh.N, j),
                                       mesh.index_of(mesh.N, j + 1),
                                       BoundaryTag::DirichletBox});
    return mesh;
}

namespace {

const char* tag_name(BoundaryTag tag) {
    switch (tag) {
        case BoundaryTag::DirichletPair: return "dirichlet_pair";
        case BoundaryTag::DirichletBox: return "dirichlet_box";
        case BoundaryTag::NeumannAxis: return "neumann_axis";
        case BoundaryTag::RobinDiag: return "robin_diag";
    }
    return "unknown";
}

}  // namespace

void dump_mesh(const StripMesh& mesh, std::ostream& os) {
    char line[256];
    std::snprintf(line, sizeof line,
                  "# strip-mesh d=%.17g m=%d L_effective=%.17g h=%.17g N=%d\n",
                  mesh.d, mesh.m, mesh.L_effective, mesh.h, mesh.N);
    os << line;
    std::snprintf(line, sizeof line, "# nodes=%zu triangles=%zu edges=%zu\n",
                  mesh.nodes.size(), mesh.triangles.size(),
                  mesh.boundary_edges.size());
    os << line;
    for (std::size_t k = 0; k < mesh.nodes.size(); ++k) {
        std::snprintf(line, sizeof line, "node %zu %.17g %.17g\n", k,
                      mesh.nodes[k][0], mesh.nodes[k][1]);
        os << line;
    }
    for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
        std::snprintf(line, sizeof line, "tri %zu %d %d %d\n", k,
                      mesh.triangles[k][0], mesh.triangles[k][1],
                      mesh.triangles[k][2]);
        os << line;
    }
    for (std::size_t k = 0; k < mesh.boundary_edges.size(); ++k) {
        std::snprintf(line, sizeof line, "edge %zu %d %d %s\n", k,
                      mesh.boundary_edges[k].a, mesh.boundary_edges[k].b,
                      tag_name(mesh.boundary_edges[k].tag));
        os << line;
    }
}

}  // namespace pairbec
