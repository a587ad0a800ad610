#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "redpoly/antipodal.hpp"
#include "redpoly/errors.hpp"

using namespace redpoly;
using namespace redpoly::testing;

namespace {

// Independent census oracle: every direction of a coarse integer grid exposes
// a strictly antipodal pair through plain support evaluation.
std::set<std::pair<Face, Face>> grid_census(const Polytope& P, int reach) {
    std::set<std::pair<Face, Face>> pairs;
    for (int a = -reach; a <= reach; ++a)
        for (int b = -reach; b <= reach; ++b)
            for (int c = -reach; c <= reach; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                Vec3 u{double(a), double(b), double(c)};
                Face f1 = support(P, u).face;
                Face f2 = support(P, -u).face;
                if (f2 < f1) std::swap(f1, f2);
                pairs.insert({f1, f2});
            }
    return pairs;
}

std::map<std::pair<FaceKind, FaceKind>, int> census_by_kind(const std::vector<AntipodalPair>& v) {
    std::map<std::pair<FaceKind, FaceKind>, int> out;
    for (const auto& p : v) ++out[{p.face1.kind, p.face2.kind}];
    return out;
}

} // namespace

TEST_CASE("cube antipodal census: 3 facet, 6 edge and 4 vertex pairs") {
    Polytope C = make_cube();
    auto pairs = strictly_antipodal_pairs(C);

    auto kinds = census_by_kind(pairs);
    CHECK(pairs.size() == 13);
    CHECK(kinds[{FaceKind::vertex, FaceKind::vertex}] == 4);
    CHECK(kinds[{FaceKind::edge, FaceKind::edge}] == 6);
    CHECK(kinds[{FaceKind::facet, FaceKind::facet}] == 3);

    // matches the grid oracle exactly
    auto oracle = grid_census(C, 3);
    CHECK(oracle.size() == 13);
    std::set<std::pair<Face, Face>> got;
    for (const auto& p : pairs) got.insert({p.face1, p.face2});
    CHECK(got == oracle);
}

TEST_CASE("antipodal pair invariants on the cube") {
    Polytope C = make_cube();
    for (const auto& p : strictly_antipodal_pairs(C)) {
        CHECK(p.face1 != p.face2);
        // the direction is a witness: support faces are exactly the pair
        CHECK(support(C, p.direction).face == p.face1);
        CHECK(support(C, -p.direction).face == p.face2);
        CHECK(p.distance == doctest::Approx(width_direction(C, p.direction)));
        CHECK(norm(p.direction) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("tetrahedron: every vertex is strictly antipodal to its opposite facet") {
    Polytope T = make_tetra();
    for (int v = 0; v < 4; ++v) {
        std::vector<int> others;
        for (int u = 0; u < 4; ++u)
            if (u != v) others.push_back(u);
        CHECK(antipodal_witness(T, Face::vertex(v), Face(others)).has_value());
    }
    // census: 6 vertex-vertex + 3 edge-edge + 4 vertex-facet
    auto kinds = census_by_kind(strictly_antipodal_pairs(T));
    CHECK(kinds[{FaceKind::vertex, FaceKind::vertex}] == 6);
    CHECK(kinds[{FaceKind::edge, FaceKind::edge}] == 3);
    CHECK(kinds[{FaceKind::vertex, FaceKind::facet}] == 4);
}

TEST_CASE("construction polytope: v1 against facet v3 v11 v12 v4") {
    Polytope P = make_reference_polytope();
    auto pairs = strictly_antipodal_pairs(P);
    bool found = false;
    for (const auto& p : pairs)
        if (p.face1 == Face::vertex(0) && p.face2 == Face({2, 10, 11, 3})) found = true;
    CHECK(found);
}

TEST_CASE("minimum width of the cube") {
    Polytope C = make_cube();
    WidthReport r = minimum_width(C);
    CHECK(r.omega == 1.0);
    CHECK(r.attaining_pairs.size() == 3); // the three facet-normal directions
    for (const auto& p : r.attaining_pairs) {
        CHECK(p.face1.kind == FaceKind::facet);
        CHECK(p.face2.kind == FaceKind::facet);
    }
}

TEST_CASE("minimum width of the regular tetrahedron") {
    Polytope T = make_tetra();
    WidthReport r = minimum_width(T);
    const double expect = 1.0 / std::sqrt(2.0);
    CHECK(r.omega == doctest::Approx(expect).epsilon(1e-13));
    CHECK(r.attaining_pairs.size() == 3); // three opposite edge pairs
    for (const auto& p : r.attaining_pairs) {
        CHECK(p.face1.kind == FaceKind::edge);
        CHECK(p.face2.kind == FaceKind::edge);
    }
    // sampling oracle confirms to 1e-3
    CHECK(sampled_min_width(T, 1000000) == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("minimum width of the construction polytope is 1") {
    Polytope P = make_reference_polytope();
    WidthReport r = minimum_width(P);
    CHECK(r.omega == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("no direction beats the reported minimum width") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 5; ++rep) {
        Polytope P = random_sphere_polytope(rng, 8 + int(rng() % 13));
        double omega = minimum_width(P).omega;
        for (int i = 0; i < 10000; ++i)
            CHECK(omega <= width_direction(P, random_unit(rng)) + 1e-12);
    }
}

TEST_CASE("width-attaining pairs span a plane and their minimum is omega") {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 15; ++rep) {
        Polytope P = random_sphere_polytope(rng, 8 + int(rng() % 13));
        WidthReport r = minimum_width(P);
        REQUIRE(!r.attaining_pairs.empty());
        double lo = r.attaining_pairs[0].distance;
        for (const auto& p : r.attaining_pairs) {
            CHECK(face_sum_dimension(P, p.face1, p.face2) == 2);
            lo = std::min(lo, p.distance);
        }
        CHECK(lo == r.omega); // the minimizing candidate resolves into a pair
    }
}

TEST_CASE("strictly antipodal pair list is symmetric") {
    for (const Polytope& P : {make_cube(), make_tetra()}) {
        for (const auto& p : strictly_antipodal_pairs(P)) {
            // (F2, F1, -u) is witnessed as well
            CHECK(support(P, -p.direction).face == p.face2);
            CHECK(support(P, p.direction).face == p.face1);
            auto w = antipodal_witness(P, p.face2, p.face1);
            REQUIRE(w.has_value());
            CHECK(support(P, *w).face == p.face2);
        }
    }
}

TEST_CASE("minkowski difference of the cube is the centered double cube") {
    Polytope D = minkowski_difference(make_cube());
    CHECK(D.vertex_count() == 8);
    CHECK(D.facet_count() == 6);
    for (const Vec3& v : D.vertices()) {
        CHECK(std::abs(v.x) == 1.0);
        CHECK(std::abs(v.y) == 1.0);
        CHECK(std::abs(v.z) == 1.0);
    }
}

TEST_CASE("minkowski difference of the tetrahedron is a cuboctahedron") {
    Polytope D = minkowski_difference(make_tetra());
    CHECK(D.vertex_count() == 12);
    CHECK(D.facet_count() == 14);
    CHECK(D.edge_count() == 24);
}

TEST_CASE("difference polytope is centrally symmetric with doubled width") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 8; ++rep) {
        Polytope P = random_sphere_polytope(rng, 8 + int(rng() % 13));
        Polytope D = minkowski_difference(P);

        // vertex set equals its negation
        for (const Vec3& v : D.vertices()) {
            bool found = false;
            for (const Vec3& w : D.vertices())
                if (norm(v + w) <= 1e-9) found = true;
            CHECK(found);
        }

        CHECK(minimum_width(D).omega ==
              doctest::Approx(2.0 * minimum_width(P).omega).epsilon(1e-10));

        // centrally symmetric: width-attaining pairs are facet pairs
        for (const auto& p : minimum_width(D).attaining_pairs) {
            CHECK(p.face1.kind == FaceKind::facet);
            CHECK(p.face2.kind == FaceKind::facet);
        }
    }
}

TEST_CASE("antipodal face of a facet") {
    Polytope C = make_cube();
    Face top, bottom;
    for (int f = 0; f < C.facet_count(); ++f) {
        if (C.facet_unit_normal(f).z > 0.5) top = C.facet_face(f);
        if (C.facet_unit_normal(f).z < -0.5) bottom = C.facet_face(f);
    }
    CHECK(antipodal_face_of_facet(C, top) == bottom);

    Polytope T = make_tetra();
    for (int f = 0; f < T.facet_count(); ++f) {
        Face opp = antipodal_face_of_facet(T, T.facet_face(f));
        CHECK(opp.kind == FaceKind::vertex);
        for (int i : T.facet(f)) CHECK(i != opp.vertex_indices[0]);
    }

    Polytope P = make_reference_polytope();
    CHECK(antipodal_face_of_facet(P, Face({2, 10, 11, 3})) == Face::vertex(0));
}

TEST_CASE("every sampled support-face pair appears in the pair list") {
    // completeness oracle: the support faces at +-u are strictly antipodal
    // by definition for any direction u, so the enumerated list must contain
    // every pair a direction sample exposes
    std::mt19937_64 rng(25);
    for (int rep = 0; rep < 3; ++rep) {
        Polytope P = random_sphere_polytope(rng, 8 + int(rng() % 9));
        std::set<std::pair<Face, Face>> have;
        for (const auto& p : strictly_antipodal_pairs(P)) have.insert({p.face1, p.face2});
        for (int i = 0; i < 3000; ++i) {
            Vec3 u = random_unit(rng);
            Face f1 = support(P, u).face;
            Face f2 = support(P, -u).face;
            if (f2 < f1) std::swap(f1, f2);
            CHECK(have.count({f1, f2}) == 1);
        }
    }
}

TEST_CASE("sampling oracle stays within 5e-3 of the exact width") {
    std::mt19937_64 rng(24);
    for (int rep = 0; rep < 3; ++rep) {
        Polytope P = random_sphere_polytope(rng, 8 + int(rng() % 13));
        double omega = minimum_width(P).omega;
        double sampled = sampled_min_width(P, 200000);
        CHECK(sampled >= omega - 1e-12);
        CHECK(sampled - omega <= 5e-3);
    }
}
