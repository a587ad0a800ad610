#include "redpoly/polytope.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "redpoly/errors.hpp"

namespace redpoly {

Face::Face(std::vector<int> indices) : vertex_indices(std::move(indices)) {
    std::sort(vertex_indices.begin(), vertex_indices.end());
    vertex_indices.erase(std::unique(vertex_indices.begin(), vertex_indices.end()),
                         vertex_indices.end());
    switch (vertex_indices.size()) {
        case 0: throw GeometryError("empty face");
        case 1: kind = FaceKind::vertex; break;
        case 2: kind = FaceKind::edge; break;
        default: kind = FaceKind::facet; break;
    }
}

bool Face::operator<(const Face& o) const {
    if (kind != o.kind) return kind < o.kind;
    return vertex_indices < o.vertex_indices;
}

namespace {

double points_scale(std::span<const Vec3> pts) {
    double s = 1.0;
    for (const Vec3& p : pts) s = std::max(s, max_abs_component(p));
    return s;
}

// Picks four affinely independent points: lexicographic minimum, farthest
// point, farthest from their line, farthest from their plane. Throws
// DegenerateInput with the achieved dimension when the spread at some stage
// stays within eps.
std::array<int, 4> initial_simplex(std::span<const Vec3> pts, double eps) {
    const int n = static_cast<int>(pts.size());
    int i0 = 0;
    for (int i = 1; i < n; ++i)
        if (lex_less(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(i0)])) i0 = i;

    int i1 = -1;
    double best = eps;
    for (int i = 0; i < n; ++i) {
        double d = norm(pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(i0)]);
        if (d > best) { best = d; i1 = i; }
    }
    if (i1 < 0) throw DegenerateInput(0, "points coincide: affine dimension 0");

    const Vec3 axis = normalized(pts[static_cast<size_t>(i1)] - pts[static_cast<size_t>(i0)]);
    int i2 = -1;
    best = eps;
    for (int i = 0; i < n; ++i) {
        Vec3 d = pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(i0)];
        double off = norm(d - axis * dot(d, axis));
        if (off > best) { best = off; i2 = i; }
    }
    if (i2 < 0) throw DegenerateInput(1, "points collinear: affine dimension 1");

    const Vec3 nrm = normalized(cross(pts[static_cast<size_t>(i1)] - pts[static_cast<size_t>(i0)],
                                      pts[static_cast<size_t>(i2)] - pts[static_cast<size_t>(i0)]));
    int i3 = -1;
    best = eps;
    for (int i = 0; i < n; ++i) {
        double off = std::abs(dot(nrm, pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(i0)]));
        if (off > best) { best = off; i3 = i; }
    }
    if (i3 < 0) throw DegenerateInput(2, "points coplanar: affine dimension 2");

    return {i0, i1, i2, i3};
}

struct HullTri {
    std::array<int, 3> v;
    Vec3 n;      // unit outward normal
    double off;  // plane offset: dot(n, x) = off
    bool alive = true;
};

struct TriangleHull {
    std::vector<HullTri> tris;
    std::map<std::pair<int, int>, int> owner; // directed edge -> triangle

    void set_owner(const HullTri& t, int idx) {
        for (int k = 0; k < 3; ++k)
            owner[{t.v[static_cast<size_t>(k)], t.v[static_cast<size_t>((k + 1) % 3)]}] = idx;
    }
    int neighbor(int a, int b) const {
        auto it = owner.find({b, a});
        return it == owner.end() ? -1 : it->second;
    }
};

} // namespace

Polytope convex_hull(std::span<const Vec3> points, double tolerance) {
    for (const Vec3& p : points)
        if (!p.finite()) throw GeometryError("non-finite input point");

    const double scale = points_scale(points);
    const double eps = tolerance * scale;

    // Drop near-duplicates, keeping first occurrences in input order.
    std::vector<Vec3> pts;
    pts.reserve(points.size());
    for (const Vec3& p : points) {
        bool dup = false;
        for (const Vec3& q : pts)
            if (norm(p - q) <= eps) { dup = true; break; }
        if (!dup) pts.push_back(p);
    }

    const std::array<int, 4> s = initial_simplex(pts, eps);
    Vec3 centroid{};
    for (int i : s) centroid += pts[static_cast<size_t>(i)];
    centroid = centroid / 4.0;

    TriangleHull hull;
    auto add_tri = [&](int a, int b, int c, const Vec3* inherited_plane, double inherited_off) {
        HullTri t;
        t.v = {a, b, c};
        Vec3 n = cross(pts[static_cast<size_t>(b)] - pts[static_cast<size_t>(a)],
                       pts[static_cast<size_t>(c)] - pts[static_cast<size_t>(a)]);
        double nn = norm(n);
        if (nn <= 1e-14 * scale * scale) {
            if (!inherited_plane)
                throw GeometryError("degenerate initial simplex facet");
            // Sliver collinear with its horizon edge: it lies in the
            // neighbouring facet's plane, so reuse that plane.
            t.n = *inherited_plane;
            t.off = inherited_off;
        } else {
            t.n = n / nn;
            t.off = dot(t.n, pts[static_cast<size_t>(a)]);
            if (dot(t.n, centroid) > t.off) {
                std::swap(t.v[1], t.v[2]);
                t.n = -t.n;
            }
            t.off = dot(t.n, pts[static_cast<size_t>(t.v[0])]);
        }
        hull.tris.push_back(t);
        hull.set_owner(hull.tris.back(), static_cast<int>(hull.tris.size()) - 1);
    };

    add_tri(s[0], s[1], s[2], nullptr, 0.0);
    add_tri(s[0], s[1], s[3], nullptr, 0.0);
    add_tri(s[0], s[2], s[3], nullptr, 0.0);
    add_tri(s[1], s[2], s[3], nullptr, 0.0);

    for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
        if (p == s[0] || p == s[1] || p == s[2] || p == s[3]) continue;
        const Vec3& q = pts[static_cast<size_t>(p)];

        std::vector<int> visible;
        for (int t = 0; t < static_cast<int>(hull.tris.size()); ++t) {
            const HullTri& tr = hull.tris[static_cast<size_t>(t)];
            if (tr.alive && dot(tr.n, q) - tr.off > eps) visible.push_back(t);
        }
        if (visible.empty()) continue;

        std::vector<char> vis(hull.tris.size(), 0);
        for (int t : visible) vis[static_cast<size_t>(t)] = 1;

        // Horizon: directed edges of visible triangles whose twin is hidden.
        std::map<int, std::pair<int, int>> next; // tail -> (head, hidden neighbor)
        size_t horizon_count = 0;
        for (int t : visible) {
            const HullTri& tr = hull.tris[static_cast<size_t>(t)];
            for (int k = 0; k < 3; ++k) {
                int a = tr.v[static_cast<size_t>(k)], b = tr.v[static_cast<size_t>((k + 1) % 3)];
                int nb = hull.neighbor(a, b);
                if (nb < 0 || !vis[static_cast<size_t>(nb)]) {
                    if (next.count(a))
                        throw GeometryError("hull insertion produced a fragmented horizon");
                    next[a] = {b, nb};
                    ++horizon_count;
                }
            }
        }
        for (int t : visible) hull.tris[static_cast<size_t>(t)].alive = false;

        int start = next.begin()->first;
        int a = start;
        size_t walked = 0;
        do {
            auto [b, nb] = next.at(a);
            const HullTri& hb = hull.tris[static_cast<size_t>(nb)];
            add_tri(p, a, b, &hb.n, hb.off);
            a = b;
            ++walked;
        } while (a != start && walked <= horizon_count);
        if (a != start || walked != horizon_count)
            throw GeometryError("hull insertion produced a fragmented horizon");
    }

    // Merge coplanar triangles into polygonal facets.
    std::vector<int> region(hull.tris.size(), -1);
    int nregions = 0;
    for (int t = 0; t < static_cast<int>(hull.tris.size()); ++t) {
        if (!hull.tris[static_cast<size_t>(t)].alive || region[static_cast<size_t>(t)] >= 0) continue;
        const HullTri& seed = hull.tris[static_cast<size_t>(t)];
        std::vector<int> stack{t};
        region[static_cast<size_t>(t)] = nregions;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            const HullTri& tc = hull.tris[static_cast<size_t>(cur)];
            for (int k = 0; k < 3; ++k) {
                int nb = hull.neighbor(tc.v[static_cast<size_t>(k)], tc.v[static_cast<size_t>((k + 1) % 3)]);
                if (nb < 0 || region[static_cast<size_t>(nb)] >= 0) continue;
                const HullTri& tn = hull.tris[static_cast<size_t>(nb)];
                if (dot(seed.n, tn.n) <= 0.5) continue;
                bool coplanar = true;
                for (int vtx : tn.v)
                    if (std::abs(dot(seed.n, pts[static_cast<size_t>(vtx)]) - seed.off) > eps) {
                        coplanar = false;
                        break;
                    }
                if (coplanar) {
                    region[static_cast<size_t>(nb)] = region[static_cast<size_t>(cur)];
                    stack.push_back(nb);
                }
            }
        }
        ++nregions;
    }

    // Trace each region's outer boundary, oriented like its triangles.
    std::vector<std::vector<int>> cycles;
    for (int rg = 0; rg < nregions; ++rg) {
        std::map<int, int> next;
        for (int t = 0; t < static_cast<int>(hull.tris.size()); ++t) {
            if (region[static_cast<size_t>(t)] != rg) continue;
            const HullTri& tr = hull.tris[static_cast<size_t>(t)];
            for (int k = 0; k < 3; ++k) {
                int a = tr.v[static_cast<size_t>(k)], b = tr.v[static_cast<size_t>((k + 1) % 3)];
                int nb = hull.neighbor(a, b);
                if (nb < 0 || region[static_cast<size_t>(nb)] != rg) {
                    if (next.count(a)) throw GeometryError("facet region boundary is not a disk");
                    next[a] = b;
                }
            }
        }
        std::vector<int> cyc;
        int start = next.begin()->first;
        int a = start;
        do {
            cyc.push_back(a);
            a = next.at(a);
        } while (a != start && cyc.size() <= next.size());
        if (a != start || cyc.size() != next.size())
            throw GeometryError("facet region boundary is not a disk");

        // Remove boundary points that are not strict corners.
        bool changed = true;
        while (changed && cyc.size() > 3) {
            changed = false;
            for (size_t i = 0; i < cyc.size(); ++i) {
                const Vec3& pa = pts[static_cast<size_t>(cyc[(i + cyc.size() - 1) % cyc.size()])];
                const Vec3& pb = pts[static_cast<size_t>(cyc[i])];
                const Vec3& pc = pts[static_cast<size_t>(cyc[(i + 1) % cyc.size()])];
                if (norm(cross(pb - pa, pc - pa)) <= eps * norm(pc - pa)) {
                    cyc.erase(cyc.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
            }
        }
        cycles.push_back(std::move(cyc));
    }

    // Keep only points that survived as corners, in input order.
    std::vector<int> used;
    for (const auto& cyc : cycles) used.insert(used.end(), cyc.begin(), cyc.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<int> remap(pts.size(), -1);
    std::vector<Vec3> verts;
    verts.reserve(used.size());
    for (int i : used) {
        remap[static_cast<size_t>(i)] = static_cast<int>(verts.size());
        verts.push_back(pts[static_cast<size_t>(i)]);
    }
    for (auto& cyc : cycles)
        for (int& v : cyc) v = remap[static_cast<size_t>(v)];

    return Polytope(std::move(verts), std::move(cycles), tolerance);
}

Polytope::Polytope(std::vector<Vec3> vertices, std::vector<std::vector<int>> facet_cycles,
                   double tolerance)
    : vertices_(std::move(vertices)), facets_(std::move(facet_cycles)), tolerance_(tolerance) {
    scale_ = points_scale(vertices_);
    canonicalize();
    validate();
}

void Polytope::canonicalize() {
    const int n = vertex_count();
    for (const Vec3& v : vertices_)
        if (!v.finite()) throw GeometryError("non-finite vertex");
    initial_simplex(vertices_, tolerance_ * scale_); // affine dimension 3 or DegenerateInput

    Vec3 centroid{};
    for (const Vec3& v : vertices_) centroid += v;
    centroid = centroid / static_cast<double>(n);

    facet_normals_.clear();
    for (auto& cyc : facets_) {
        if (cyc.size() < 3) throw NotConvex("facet with fewer than 3 vertices");
        for (int v : cyc)
            if (v < 0 || v >= n) throw GeometryError("facet index out of range");
        std::vector<int> sorted_unique(cyc);
        std::sort(sorted_unique.begin(), sorted_unique.end());
        if (std::adjacent_find(sorted_unique.begin(), sorted_unique.end()) != sorted_unique.end())
            throw NotConvex("facet repeats a vertex");

        // Newell normal; orient the cycle counterclockwise from outside.
        Vec3 nrm{};
        for (size_t i = 0; i < cyc.size(); ++i) {
            const Vec3& a = vertices_[static_cast<size_t>(cyc[i])];
            const Vec3& b = vertices_[static_cast<size_t>(cyc[(i + 1) % cyc.size()])];
            nrm += cross(a, b);
        }
        double nn = norm(nrm);
        if (nn <= 1e-14 * scale_ * scale_) throw NotConvex("degenerate facet polygon");
        Vec3 unit = nrm / nn;
        if (dot(unit, vertices_[static_cast<size_t>(cyc[0])] - centroid) < 0.0) {
            std::reverse(cyc.begin(), cyc.end());
            unit = -unit;
        }
        facet_normals_.push_back(unit);

        // Rotate so the smallest index leads (orientation preserved).
        auto mn = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), mn, cyc.end());
    }

    std::vector<int> order(facets_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return facets_[static_cast<size_t>(a)] < facets_[static_cast<size_t>(b)];
    });
    std::vector<std::vector<int>> fs;
    std::vector<Vec3> ns;
    fs.reserve(facets_.size());
    ns.reserve(facets_.size());
    for (int i : order) {
        fs.push_back(std::move(facets_[static_cast<size_t>(i)]));
        ns.push_back(facet_normals_[static_cast<size_t>(i)]);
    }
    facets_ = std::move(fs);
    facet_normals_ = std::move(ns);
}

void Polytope::validate() {
    const double eps = abs_tolerance();
    const int n = vertex_count();

    std::vector<double> offsets(facets_.size());
    for (size_t f = 0; f < facets_.size(); ++f) {
        const auto& cyc = facets_[f];
        const Vec3& nrm = facet_normals_[f];
        double off = 0.0;
        for (int v : cyc) off += dot(nrm, vertices_[static_cast<size_t>(v)]);
        off /= static_cast<double>(cyc.size());
        offsets[f] = off;
        for (int v : cyc)
            if (std::abs(dot(nrm, vertices_[static_cast<size_t>(v)]) - off) > eps)
                throw NotConvex("facet vertices not coplanar within tolerance");
        for (size_t i = 0; i < cyc.size(); ++i) {
            const Vec3& a = vertices_[static_cast<size_t>(cyc[(i + cyc.size() - 1) % cyc.size()])];
            const Vec3& b = vertices_[static_cast<size_t>(cyc[i])];
            const Vec3& c = vertices_[static_cast<size_t>(cyc[(i + 1) % cyc.size()])];
            if (dot(nrm, cross(b - a, c - b)) < 0.0)
                throw NotConvex("facet polygon is not convex");
            if (norm(cross(b - a, c - a)) <= eps * norm(c - a))
                throw NotConvex("vertex " + std::to_string(cyc[i]) +
                                " is not a strict corner of its facet");
        }
    }

    for (int v = 0; v < n; ++v)
        for (size_t f = 0; f < facets_.size(); ++f)
            if (dot(facet_normals_[f], vertices_[static_cast<size_t>(v)]) > offsets[f] + eps)
                throw NotConvex("vertex " + std::to_string(v) +
                                " lies outside a facet plane");

    std::vector<int> incidence(static_cast<size_t>(n), 0);
    std::map<std::pair<int, int>, int> directed;
    for (const auto& cyc : facets_)
        for (size_t i = 0; i < cyc.size(); ++i) {
            int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            if (++directed[{a, b}] > 1)
                throw NotConvex("directed edge used twice: lattice is not a closed surface");
            ++incidence[static_cast<size_t>(a)];
        }
    for (int v = 0; v < n; ++v)
        if (incidence[static_cast<size_t>(v)] < 3)
            throw NotConvex("vertex " + std::to_string(v) + " is not extreme");

    edges_.clear();
    for (const auto& [e, cnt] : directed) {
        if (!directed.count({e.second, e.first}))
            throw NotConvex("boundary edge has only one incident facet");
        if (e.first < e.second) edges_.push_back({e.first, e.second});
    }

    if (n - static_cast<int>(edges_.size()) + static_cast<int>(facets_.size()) != 2)
        throw NotConvex("Euler relation V - E + F = 2 violated");
}

Face Polytope::facet_face(int f) const {
    return Face(facets_[static_cast<size_t>(f)]);
}

int Polytope::facet_index(const Face& face) const {
    if (face.kind != FaceKind::facet) return -1;
    for (int f = 0; f < facet_count(); ++f)
        if (facet_face(f) == face) return f;
    return -1;
}

std::vector<int> Polytope::facets_at_vertex(int v) const {
    std::vector<int> out;
    for (int f = 0; f < facet_count(); ++f)
        for (int u : facets_[static_cast<size_t>(f)])
            if (u == v) {
                out.push_back(f);
                break;
            }
    return out;
}

SupportResult support(const Polytope& P, const Vec3& u) {
    const double un = norm(u);
    if (!(un > 1e-12)) throw ZeroDirection();

    double best = -std::numeric_limits<double>::infinity();
    for (const Vec3& v : P.vertices()) best = std::max(best, dot(u, v));

    const double eps = P.abs_tolerance() * un;
    std::vector<int> face;
    for (int i = 0; i < P.vertex_count(); ++i)
        if (dot(u, P.vertex(i)) >= best - eps) face.push_back(i);
    return {best, Face(std::move(face))};
}

double width_direction(const Polytope& P, const Vec3& u) {
    const double un = norm(u);
    if (!(un > 1e-12)) throw ZeroDirection();
    const Vec3 d = u / un;
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (const Vec3& v : P.vertices()) {
        double t = dot(d, v);
        hi = std::max(hi, t);
        lo = std::min(lo, t);
    }
    return hi - lo;
}

double affine_hull_distance(std::span<const Vec3> A, std::span<const Vec3> B,
                            double tolerance) {
    double s = std::max(points_scale(A), points_scale(B));
    const double eps = tolerance * s;

    // Orthonormal basis of the combined direction span.
    std::vector<Vec3> basis;
    auto feed = [&](std::span<const Vec3> S) {
        for (size_t i = 1; i < S.size(); ++i) {
            Vec3 w = S[i] - S[0];
            double w0 = norm(w);
            if (w0 <= eps) continue;
            for (const Vec3& b : basis) w -= b * dot(w, b);
            double wn = norm(w);
            if (wn > tolerance * w0) basis.push_back(w / wn);
        }
    };
    feed(A);
    feed(B);

    Vec3 d = B[0] - A[0];
    for (const Vec3& b : basis) d -= b * dot(d, b);
    return norm(d);
}

double rho(const Polytope& P, const Face& A, const Face& B) {
    std::vector<Vec3> pa, pb;
    for (int i : A.vertex_indices) pa.push_back(P.vertex(i));
    for (int i : B.vertex_indices) pb.push_back(P.vertex(i));
    return affine_hull_distance(pa, pb, P.tolerance());
}

} // namespace redpoly
