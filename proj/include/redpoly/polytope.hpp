#pragma once

#include <array>
#include <span>
#include <vector>

#include "redpoly/vec3.hpp"

namespace redpoly {

enum class FaceKind { vertex, edge, facet };

// A face of a polytope, identified by its sorted vertex index list. The kind
// follows the cardinality: 1 index is a vertex, 2 an edge, 3 or more a facet.
struct Face {
    FaceKind kind = FaceKind::vertex;
    std::vector<int> vertex_indices; // sorted ascending

    Face() = default;
    explicit Face(std::vector<int> indices);
    static Face vertex(int i) { return Face({i}); }
    static Face edge(int i, int j) { return Face({i, j}); }

    int dimension_bound() const { return static_cast<int>(kind); }
    bool operator==(const Face& o) const { return vertex_indices == o.vertex_indices; }
    bool operator!=(const Face& o) const { return !(*this == o); }
    bool operator<(const Face& o) const;
};

// Convex polytope in R^3 with its full face lattice. Facets are stored as
// vertex cycles, counterclockwise as seen from outside; edges are derived.
// Instances are immutable after construction and validated on construction:
//   - affine dimension of the vertex set is 3
//   - facets coplanar within tolerance, convex, oriented outward
//   - every vertex is extreme and lies on the inner side of every facet plane
//   - each edge is shared by exactly two facets; V - E + F = 2
class Polytope {
public:
    // Builds from an explicit lattice. Facet cycles may come in either
    // orientation; they are flipped to counterclockwise-from-outside and the
    // whole lattice is validated. Throws DegenerateInput / NotConvex.
    Polytope(std::vector<Vec3> vertices, std::vector<std::vector<int>> facet_cycles,
             double tolerance);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<std::vector<int>>& facets() const { return facets_; }
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }
    double tolerance() const { return tolerance_; }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int facet_count() const { return static_cast<int>(facets_.size()); }

    const Vec3& vertex(int i) const { return vertices_[static_cast<size_t>(i)]; }
    const std::vector<int>& facet(int f) const { return facets_[static_cast<size_t>(f)]; }
    // Unit outward normal of facet f.
    const Vec3& facet_unit_normal(int f) const { return facet_normals_[static_cast<size_t>(f)]; }

    Face facet_face(int f) const;
    // Index of a facet given as a Face, or -1 when it is not a facet of this
    // polytope.
    int facet_index(const Face& face) const;

    // max(1, largest coordinate magnitude); absolute tolerances are
    // tolerance() * scale().
    double scale() const { return scale_; }
    double abs_tolerance() const { return tolerance_ * scale_; }

    // Facet indices incident to a vertex, ascending.
    std::vector<int> facets_at_vertex(int v) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<std::vector<int>> facets_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<Vec3> facet_normals_;
    double tolerance_;
    double scale_;

    void canonicalize();
    void validate();
};

// Convex hull with coplanar-facet merging: facets of the result are maximal
// polygonal faces, and the vertex list contains only extreme points (in input
// order). Requires at least 4 affinely independent points; throws
// DegenerateInput with the achieved dimension otherwise.
Polytope convex_hull(std::span<const Vec3> points, double tolerance = 1e-9);

struct SupportResult {
    double value; // h(P, u)
    Face face;    // H(P, u) intersected with P
};

// Support function h(P,u) = max_v <u, v> together with the support face (all
// vertices within absolute tolerance of the max). Throws ZeroDirection.
SupportResult support(const Polytope& P, const Vec3& u);

// h(P,u) + h(P,-u) for the normalized direction; the distance between the two
// parallel supporting planes orthogonal to u. Throws ZeroDirection.
double width_direction(const Polytope& P, const Vec3& u);

// Distance between the affine hulls of two point sets: handles point-point,
// point-line, point-plane, line-line (skew or parallel), line-plane and
// plane-plane uniformly, returning 0 whenever the hulls intersect.
double affine_hull_distance(std::span<const Vec3> A, std::span<const Vec3> B,
                            double tolerance = 1e-9);

// Same, for faces of a polytope.
double rho(const Polytope& P, const Face& A, const Face& B);

} // namespace redpoly
