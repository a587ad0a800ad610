#pragma once

#include <optional>
#include <vector>

#include "redpoly/polytope.hpp"

namespace redpoly {

// Edge fan around a vertex: neighbor vertices in clockwise cyclic order as
// seen from outside the polytope, and the incident facets in the matching
// order (facets[i] contains the edges to neighbors[i] and neighbors[i+1]).
struct VertexFan {
    int vertex = -1;
    std::vector<int> neighbors;
    std::vector<int> facets; // facet indices
    int degree() const { return static_cast<int>(neighbors.size()); }
};

VertexFan vertex_fan(const Polytope& P, int vertex);

// Assignment of a vertex fan to the edges of a k-gonal facet: the fan is
// rotated by `offset` and split into k consecutive groups of sizes
// groups[0..k-1] >= 1 summing to the fan degree.
struct Alignment {
    int offset = 0;
    std::vector<int> groups;
};

// All alignments of a degree-m fan against a k-gonal facet, in deterministic
// order: m rotations times the compositions of m into k positive parts,
// m * binom(m-1, k-1) in total.
std::vector<Alignment> enumerate_alignments(int fan_degree, int facet_edge_count);

struct EdgePairEvidence {
    Face fan_edge;
    Face facet_edge;
    bool antipodal = false;
};

struct FacetVertexEvidence {
    Face fan_facet;
    int facet_vertex = -1;
    bool antipodal = false;
    double distance = 0.0;
    bool at_omega = false;
};

// Evaluation of the three-part obstruction at one facet/vertex/alignment
// triple. holds_a: the facet and the vertex are strictly antipodal at
// distance omega. holds_b: each group's leading fan edge is strictly
// antipodal to the matching facet edge. holds_c: each group's fan facets are
// all strictly antipodal to the matching facet vertex, at least one of them
// at distance omega.
struct ConditionReport {
    Face facet;
    int vertex = -1;
    Alignment alignment;
    double omega = 0.0;
    bool holds_a = false;
    double rho_vertex_facet = 0.0;
    bool holds_b = false;
    std::vector<EdgePairEvidence> edge_pairs;
    bool holds_c = false;
    std::vector<FacetVertexEvidence> facet_vertex_pairs;
    bool all_hold() const { return holds_a && holds_b && holds_c; }
};

// A full obstruction instance: all three conditions verified true on the same
// triple. A polytope admitting one is not reduced; the converse does not
// hold, so an empty scan result decides nothing.
struct Certificate {
    ConditionReport report;
    double omega = 0.0;
};

ConditionReport check_conditions(const Polytope& P, const Face& facet, int vertex,
                                 const Alignment& alignment);

// Scans facets x vertices x alignments for a full certificate, trying the
// degree-matched (all group sizes 1) triples first, and returns the first
// hit in deterministic order, if any.
std::optional<Certificate> scan_certificate(const Polytope& P);

} // namespace redpoly
