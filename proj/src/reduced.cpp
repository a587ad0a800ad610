#include "redpoly/reduced.hpp"

#include <algorithm>
#include <limits>

#include "redpoly/errors.hpp"

namespace redpoly {

namespace {

// Orthogonal projection of a point onto a facet plane plus a strict 2D
// point-in-polygon test against the facet cycle.
ProjectionDiagnostic project_onto_facet(const Polytope& P, int facet_idx, const Vec3& p) {
    const auto& cyc = P.facet(facet_idx);
    const Vec3& n = P.facet_unit_normal(facet_idx);
    double off = dot(n, P.vertex(cyc.front()));
    double signed_dist = dot(n, p) - off;
    Vec3 proj = p - n * signed_dist;

    const double eps = P.abs_tolerance();
    bool inside = true;
    for (size_t i = 0; i < cyc.size(); ++i) {
        const Vec3& a = P.vertex(cyc[i]);
        const Vec3& b = P.vertex(cyc[(i + 1) % cyc.size()]);
        // signed in-plane distance of proj from the directed edge a->b;
        // positive on the polygon side for a counterclockwise cycle
        double side = dot(n, cross(b - a, proj - a)) / norm(b - a);
        if (side <= eps) {
            inside = false;
            break;
        }
    }

    ProjectionDiagnostic d;
    d.facet = P.facet_face(facet_idx);
    d.projection = proj;
    d.in_relative_interior = inside;
    d.distance = std::abs(signed_dist);
    return d;
}

} // namespace

ReducednessReport is_reduced(const Polytope& P) {
    const std::vector<Vec3> cands = width_candidate_directions(P);
    double omega = std::numeric_limits<double>::infinity();
    for (const Vec3& u : cands) omega = std::min(omega, width_direction(P, u));

    ReducednessReport report;
    report.omega = omega;
    report.candidate_count = static_cast<int>(cands.size());
    report.vertex_status.resize(static_cast<size_t>(P.vertex_count()));
    for (int v = 0; v < P.vertex_count(); ++v) report.vertex_status[static_cast<size_t>(v)].vertex = v;

    const double eps = P.abs_tolerance();
    for (int f = 0; f < P.facet_count(); ++f) {
        const Vec3& n = P.facet_unit_normal(f);
        double what = width_direction(P, n);
        Face fhat = support(P, -n).face;
        if (fhat.kind != FaceKind::vertex) continue;
        int v = fhat.vertex_indices.front();
        VertexStatus& st = report.vertex_status[static_cast<size_t>(v)];
        if (std::abs(what - omega) <= eps) {
            if (!st.marked) {
                st.marked = true;
                st.witness_facet = P.facet_face(f);
                st.distance = what;
                st.projection_in_relint =
                    project_onto_facet(P, f, P.vertex(v)).in_relative_interior;
            }
        } else if (!st.marked && what <= omega + 10.0 * eps) {
            st.near_miss = true;
        }
    }

    report.reduced = std::all_of(report.vertex_status.begin(), report.vertex_status.end(),
                                 [](const VertexStatus& s) { return s.marked; });
    return report;
}

std::vector<ProjectionDiagnostic> projection_diagnostic(const Polytope& P, int vertex) {
    if (vertex < 0 || vertex >= P.vertex_count())
        throw NotAVertex("vertex index " + std::to_string(vertex) + " out of range");

    std::vector<ProjectionDiagnostic> out;
    const Face v = Face::vertex(vertex);
    for (int f = 0; f < P.facet_count(); ++f) {
        if (!antipodal_witness(P, v, P.facet_face(f))) continue;
        out.push_back(project_onto_facet(P, f, P.vertex(vertex)));
    }
    return out;
}

} // namespace redpoly
