#include "redpoly/antipodal.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>

#include "redpoly/errors.hpp"

namespace redpoly {

namespace {

// ---- minimum-norm point in the convex hull of a point set -----------------
//
// Gilbert-style descent with exact closest-point evaluation on simplices of
// up to four points. Used as the slack maximizer of the witness search: the
// largest margin of a direction against unit constraint vectors c_i equals
// the distance from the origin to conv{c_i}, attained toward the minimum-norm
// point.

struct SimplexResult {
    Vec3 point;
    std::vector<int> keep; // indices into the working set
};

SimplexResult closest_on_segment(const Vec3& a, const Vec3& b) {
    Vec3 ab = b - a;
    double denom = norm2(ab);
    if (denom <= 0.0) return {a, {0}};
    double t = -dot(a, ab) / denom;
    if (t <= 0.0) return {a, {0}};
    if (t >= 1.0) return {b, {1}};
    return {a + ab * t, {0, 1}};
}

SimplexResult closest_on_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 ab = b - a, ac = c - a;
    double d1 = -dot(ab, a), d2 = -dot(ac, a);
    if (d1 <= 0.0 && d2 <= 0.0) return {a, {0}};

    double d3 = -dot(ab, b), d4 = -dot(ac, b);
    if (d3 >= 0.0 && d4 <= d3) return {b, {1}};

    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        double t = d1 / (d1 - d3);
        return {a + ab * t, {0, 1}};
    }

    double d5 = -dot(ab, c), d6 = -dot(ac, c);
    if (d6 >= 0.0 && d5 <= d6) return {c, {2}};

    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        double t = d2 / (d2 - d6);
        return {a + ac * t, {0, 2}};
    }

    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && d4 - d3 >= 0.0 && d5 - d6 >= 0.0) {
        double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return {b + (c - b) * t, {1, 2}};
    }

    double denom = 1.0 / (va + vb + vc);
    double v = vb * denom, w = vc * denom;
    return {a + ab * v + ac * w, {0, 1, 2}};
}

SimplexResult closest_on_tetrahedron(const Vec3& a, const Vec3& b, const Vec3& c,
                                     const Vec3& d) {
    auto outside = [](const Vec3& p, const Vec3& q, const Vec3& r, const Vec3& opp) {
        Vec3 n = cross(q - p, r - p);
        double sd = -dot(n, p);           // origin side
        double so = dot(n, opp - p);      // fourth-vertex side
        return sd * so < 0.0;
    };

    bool out_abc = outside(a, b, c, d);
    bool out_abd = outside(a, b, d, c);
    bool out_acd = outside(a, c, d, b);
    bool out_bcd = outside(b, c, d, a);
    if (!out_abc && !out_abd && !out_acd && !out_bcd)
        return {Vec3{}, {0, 1, 2, 3}}; // origin inside

    SimplexResult best;
    double best_d = std::numeric_limits<double>::infinity();
    auto consider = [&](bool out, const Vec3& p, const Vec3& q, const Vec3& r, int ip,
                        int iq, int ir) {
        if (!out) return;
        SimplexResult sr = closest_on_triangle(p, q, r);
        double dd = norm2(sr.point);
        if (dd < best_d) {
            best_d = dd;
            std::vector<int> ids{ip, iq, ir};
            std::vector<int> keep;
            for (int k : sr.keep) keep.push_back(ids[static_cast<size_t>(k)]);
            best = {sr.point, keep};
        }
    };
    consider(out_abc, a, b, c, 0, 1, 2);
    consider(out_abd, a, b, d, 0, 1, 3);
    consider(out_acd, a, c, d, 0, 2, 3);
    consider(out_bcd, b, c, d, 1, 2, 3);
    return best;
}

struct MinNorm {
    Vec3 point;
    double dist;
};

MinNorm min_norm_point(const std::vector<Vec3>& pts) {
    int start = 0;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i)
        if (norm2(pts[static_cast<size_t>(i)]) < norm2(pts[static_cast<size_t>(start)]))
            start = i;

    std::vector<int> W{start};
    Vec3 x = pts[static_cast<size_t>(start)];

    for (int it = 0; it < 200; ++it) {
        double xx = norm2(x);
        if (xx <= 1e-30) return {Vec3{}, 0.0};

        int s = 0;
        double hmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            double h = dot(x, pts[static_cast<size_t>(i)]);
            if (h < hmin) { hmin = h; s = i; }
        }
        if (xx - hmin <= 1e-12 * xx) break;
        if (std::find(W.begin(), W.end(), s) != W.end()) break;
        W.push_back(s);

        SimplexResult sr;
        const auto at = [&](int k) -> const Vec3& { return pts[static_cast<size_t>(W[static_cast<size_t>(k)])]; };
        switch (W.size()) {
            case 2: sr = closest_on_segment(at(0), at(1)); break;
            case 3: sr = closest_on_triangle(at(0), at(1), at(2)); break;
            default: sr = closest_on_tetrahedron(at(0), at(1), at(2), at(3)); break;
        }
        if (sr.keep.size() == 4) return {Vec3{}, 0.0};
        std::vector<int> reduced;
        for (int k : sr.keep) reduced.push_back(W[static_cast<size_t>(k)]);
        W = std::move(reduced);
        x = sr.point;
    }
    return {x, norm(x)};
}

// Orthonormal basis of the span of the given vectors (tolerance-thresholded).
std::vector<Vec3> orthonormal_span(const std::vector<Vec3>& dirs, double tol) {
    std::vector<Vec3> basis;
    for (const Vec3& v : dirs) {
        double v0 = norm(v);
        if (v0 <= 0.0) continue;
        Vec3 w = v;
        for (const Vec3& b : basis) w -= b * dot(w, b);
        double wn = norm(w);
        if (wn > tol * v0) basis.push_back(w / wn);
        if (basis.size() == 3) break;
    }
    return basis;
}

std::vector<Vec3> face_directions(const Polytope& P, const Face& F) {
    std::vector<Vec3> dirs;
    const auto& ids = F.vertex_indices;
    for (size_t i = 1; i < ids.size(); ++i)
        dirs.push_back(P.vertex(ids[i]) - P.vertex(ids[0]));
    return dirs;
}

Vec3 canonical_sign(const Vec3& u) {
    Vec3 v = u;
    bool flip = v.x < 0.0 || (v.x == 0.0 && (v.y < 0.0 || (v.y == 0.0 && v.z < 0.0)));
    if (flip) v = -v;
    return {v.x + 0.0, v.y + 0.0, v.z + 0.0}; // clears negative zeros
}

} // namespace

std::vector<Vec3> width_candidate_directions(const Polytope& P) {
    std::vector<Vec3> cands;
    for (int f = 0; f < P.facet_count(); ++f)
        cands.push_back(canonical_sign(P.facet_unit_normal(f)));

    const auto& E = P.edges();
    const double tol = P.tolerance();
    for (size_t i = 0; i < E.size(); ++i) {
        Vec3 e1 = P.vertex(E[i][1]) - P.vertex(E[i][0]);
        for (size_t j = i + 1; j < E.size(); ++j) {
            Vec3 e2 = P.vertex(E[j][1]) - P.vertex(E[j][0]);
            Vec3 cr = cross(e1, e2);
            double cn = norm(cr);
            if (cn <= tol * norm(e1) * norm(e2)) continue; // parallel pair
            cands.push_back(canonical_sign(cr / cn));
        }
    }

    std::sort(cands.begin(), cands.end(), lex_less);
    std::vector<Vec3> out;
    for (const Vec3& u : cands)
        if (out.empty() || norm(u - out.back()) > 1e-12) out.push_back(u);
    return out;
}

WidthReport minimum_width(const Polytope& P) {
    const std::vector<Vec3> cands = width_candidate_directions(P);
    std::vector<double> widths;
    widths.reserve(cands.size());
    double omega = std::numeric_limits<double>::infinity();
    for (const Vec3& u : cands) {
        widths.push_back(width_direction(P, u));
        omega = std::min(omega, widths.back());
    }

    const double eps = P.abs_tolerance();
    WidthReport report;
    report.omega = omega;
    report.candidate_count = static_cast<int>(cands.size());

    std::map<std::pair<Face, Face>, AntipodalPair> seen;
    for (size_t i = 0; i < cands.size(); ++i) {
        if (widths[i] > omega + eps) continue;
        Vec3 u = cands[i];
        Face f1 = support(P, u).face;
        Face f2 = support(P, -u).face;
        if (f2 < f1) {
            std::swap(f1, f2);
            u = -u;
        }
        auto [it, inserted] = seen.try_emplace({f1, f2}, AntipodalPair{f1, f2, u, widths[i]});
        if (!inserted) it->second.distance = std::min(it->second.distance, widths[i]);
    }
    for (auto& [key, pair] : seen) report.attaining_pairs.push_back(std::move(pair));
    std::sort(report.attaining_pairs.begin(), report.attaining_pairs.end(),
              [](const AntipodalPair& a, const AntipodalPair& b) {
                  return lex_less(a.direction, b.direction);
              });
    return report;
}

std::optional<Vec3> antipodal_witness(const Polytope& P, const Face& F1, const Face& F2) {
    if (F1 == F2) return std::nullopt;

    std::vector<Vec3> dirs = face_directions(P, F1);
    for (const Vec3& d : face_directions(P, F2)) dirs.push_back(d);
    const std::vector<Vec3> span = orthonormal_span(dirs, P.tolerance());
    if (span.size() == 3) return std::nullopt;

    // Complement basis: every witness is constant on both faces, so it lives
    // in the orthogonal complement of their combined direction span.
    std::vector<Vec3> comp;
    for (const Vec3& e : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
        Vec3 w = e;
        for (const Vec3& b : span) w -= b * dot(w, b);
        for (const Vec3& b : comp) w -= b * dot(w, b);
        double wn = norm(w);
        if (wn > 1e-9) comp.push_back(w / wn);
        if (span.size() + comp.size() == 3) break;
    }

    std::vector<char> in1(static_cast<size_t>(P.vertex_count()), 0);
    std::vector<char> in2(static_cast<size_t>(P.vertex_count()), 0);
    for (int i : F1.vertex_indices) in1[static_cast<size_t>(i)] = 1;
    for (int i : F2.vertex_indices) in2[static_cast<size_t>(i)] = 1;

    const Vec3 v0 = P.vertex(F1.vertex_indices.front());
    const Vec3 w0 = P.vertex(F2.vertex_indices.front());
    const double eps = P.abs_tolerance();

    std::vector<Vec3> constraints;
    auto add_constraint = [&](const Vec3& c) {
        Vec3 cw{};
        for (const Vec3& b : comp) cw += b * dot(c, b);
        double cn = norm(cw);
        if (cn <= eps) return false; // cannot be strictly satisfied
        constraints.push_back(cw / cn);
        return true;
    };
    for (int i = 0; i < P.vertex_count(); ++i) {
        if (!in1[static_cast<size_t>(i)] && !add_constraint(v0 - P.vertex(i)))
            return std::nullopt;
        if (!in2[static_cast<size_t>(i)] && !add_constraint(P.vertex(i) - w0))
            return std::nullopt;
    }

    const MinNorm mn = min_norm_point(constraints);
    if (mn.dist <= P.tolerance()) return std::nullopt;

    const Vec3 u = normalized(mn.point);
    if (support(P, u).face == F1 && support(P, -u).face == F2) return u;
    return std::nullopt;
}

std::vector<AntipodalPair> strictly_antipodal_pairs(const Polytope& P) {
    std::vector<Face> faces;
    for (int v = 0; v < P.vertex_count(); ++v) faces.push_back(Face::vertex(v));
    for (const auto& e : P.edges()) faces.push_back(Face::edge(e[0], e[1]));
    for (int f = 0; f < P.facet_count(); ++f) faces.push_back(P.facet_face(f));
    std::sort(faces.begin(), faces.end());

    std::vector<AntipodalPair> out;
    for (size_t i = 0; i < faces.size(); ++i)
        for (size_t j = i + 1; j < faces.size(); ++j)
            if (auto u = antipodal_witness(P, faces[i], faces[j]))
                out.push_back({faces[i], faces[j], *u, width_direction(P, *u)});
    return out;
}

Face antipodal_face_of_facet(const Polytope& P, const Face& facet) {
    int f = P.facet_index(facet);
    if (f < 0) throw GeometryError("face is not a facet of the polytope");
    return support(P, -P.facet_unit_normal(f)).face;
}

Polytope minkowski_difference(const Polytope& P) {
    std::vector<Vec3> diffs;
    diffs.reserve(static_cast<size_t>(P.vertex_count()) * static_cast<size_t>(P.vertex_count()));
    for (const Vec3& x : P.vertices())
        for (const Vec3& y : P.vertices()) diffs.push_back(x - y);
    return convex_hull(diffs, P.tolerance());
}

int face_sum_dimension(const Polytope& P, const Face& F1, const Face& F2) {
    std::vector<Vec3> dirs = face_directions(P, F1);
    for (const Vec3& d : face_directions(P, F2)) dirs.push_back(d);
    return static_cast<int>(orthonormal_span(dirs, P.tolerance()).size());
}

} // namespace redpoly
