#pragma once

#include <optional>
#include <vector>

#include "redpoly/polytope.hpp"

namespace redpoly {

// Two faces exposed by a common witness direction: the support face at
// `direction` is face1 and the support face at -direction is face2.
// `distance` is the gap between the two parallel supporting planes,
// i.e. width_direction(P, direction).
struct AntipodalPair {
    Face face1;
    Face face2;
    Vec3 direction;
    double distance = 0.0;
};

struct WidthReport {
    double omega = 0.0;
    std::vector<AntipodalPair> attaining_pairs;
    int candidate_count = 0;
};

// Candidate directions whose widths contain the minimum width: outward facet
// normals plus normalized cross products of all non-parallel edge pairs.
// Deduplicated, sign-canonicalized and sorted lexicographically.
std::vector<Vec3> width_candidate_directions(const Polytope& P);

// Minimum width over the candidate scheme, with every pair of support faces
// attaining the minimum within tolerance. Pairs are deduplicated and sorted
// by direction.
WidthReport minimum_width(const Polytope& P);

// Witness direction u with support face u -> F1 and -u -> F2, when the pair
// is strictly antipodal. The search maximizes the minimum slack over the
// normal-cone constraints; a pair whose optimal slack stays within tolerance
// is ruled out. The returned direction is re-verified through the support
// function before being accepted.
std::optional<Vec3> antipodal_witness(const Polytope& P, const Face& F1, const Face& F2);

// All strictly antipodal face pairs, one entry per unordered pair with
// face1 < face2; (F1,F2,u) in the list represents (F2,F1,-u) as well.
std::vector<AntipodalPair> strictly_antipodal_pairs(const Polytope& P);

// Support face in the direction opposite to a facet's outward normal. This
// face is strictly antipodal to the facet, the facet normal being a witness.
Face antipodal_face_of_facet(const Polytope& P, const Face& facet);

// Difference polytope: convex hull of {x - y : x, y vertices of P},
// centrally symmetric about the origin, with width twice the width of P in
// every direction.
Polytope minkowski_difference(const Polytope& P);

// Affine dimension of F1 + F2 (Minkowski sum), i.e. the rank of the combined
// edge-direction span of the two faces.
int face_sum_dimension(const Polytope& P, const Face& F1, const Face& F2);

} // namespace redpoly
