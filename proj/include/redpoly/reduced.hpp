#pragma once

#include <optional>
#include <vector>

#include "redpoly/antipodal.hpp"
#include "redpoly/polytope.hpp"

namespace redpoly {

struct VertexStatus {
    int vertex = -1;
    bool marked = false;
    std::optional<Face> witness_facet; // facet whose antipodal face is exactly this vertex
    double distance = 0.0;             // width along the witness facet normal
    std::optional<bool> projection_in_relint;
    bool near_miss = false; // unmarked, but a vertex witness sits within 10x tolerance of omega
};

struct ReducednessReport {
    double omega = 0.0;
    std::vector<VertexStatus> vertex_status; // one entry per vertex, in index order
    bool reduced = false;
    int candidate_count = 0;
};

// Reducedness check: the minimum width is taken over the candidate scheme
// (skew-edge cross products and facet normals, the same set minimum_width
// uses), then a vertex is marked when some facet's opposite support face is
// exactly that vertex at distance omega within tolerance. The polytope is
// reduced iff every vertex is marked.
ReducednessReport is_reduced(const Polytope& P);

struct ProjectionDiagnostic {
    Face facet;
    Vec3 projection;
    bool in_relative_interior = false;
    double distance = 0.0;
};

// For each facet strictly antipodal to the vertex: the orthogonal projection
// of the vertex onto the facet plane, whether it lies strictly inside the
// facet polygon, and the plane distance. Throws NotAVertex.
std::vector<ProjectionDiagnostic> projection_diagnostic(const Polytope& P, int vertex);

} // namespace redpoly
