#include "redpoly/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "redpoly/errors.hpp"

namespace redpoly {

namespace {

// Forward-mode dual number carrying the gradient with respect to (x,s,h,r).
struct Dual {
    double v = 0.0;
    std::array<double, 4> g{};

    Dual() = default;
    Dual(double value) : v(value) {}
    static Dual seeded(double value, int slot) {
        Dual d(value);
        d.g[static_cast<size_t>(slot)] = 1.0;
        return d;
    }
};

Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.v + b.v);
    for (int i = 0; i < 4; ++i) r.g[static_cast<size_t>(i)] = a.g[static_cast<size_t>(i)] + b.g[static_cast<size_t>(i)];
    return r;
}
Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.v - b.v);
    for (int i = 0; i < 4; ++i) r.g[static_cast<size_t>(i)] = a.g[static_cast<size_t>(i)] - b.g[static_cast<size_t>(i)];
    return r;
}
Dual operator-(const Dual& a) {
    Dual r(-a.v);
    for (int i = 0; i < 4; ++i) r.g[static_cast<size_t>(i)] = -a.g[static_cast<size_t>(i)];
    return r;
}
Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.v * b.v);
    for (int i = 0; i < 4; ++i)
        r.g[static_cast<size_t>(i)] = a.g[static_cast<size_t>(i)] * b.v + a.v * b.g[static_cast<size_t>(i)];
    return r;
}
Dual operator/(const Dual& a, const Dual& b) {
    Dual r(a.v / b.v);
    for (int i = 0; i < 4; ++i)
        r.g[static_cast<size_t>(i)] =
            (a.g[static_cast<size_t>(i)] * b.v - a.v * b.g[static_cast<size_t>(i)]) / (b.v * b.v);
    return r;
}

template <class T>
struct V3 {
    T x, y, z;
};
template <class T>
V3<T> operator-(const V3<T>& a, const V3<T>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
template <class T>
T dot3(const V3<T>& a, const V3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
template <class T>
V3<T> cross3(const V3<T>& a, const V3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// The residual over a generic scalar type; t is the eliminated parameter
// d1 / 2. Only the vertices entering the four equations are materialized.
template <class T>
std::array<T, 4> residual_eval(const T& x, const T& s, const T& h, const T& r, double t,
                               const TargetDeltas& dl) {
    const T zero(0.0);
    const V3<T> v1{r, zero, T(-t)};
    const V3<T> v2{-r, zero, T(-t)};
    const V3<T> v3{zero, r, T(t)};
    const V3<T> v4{zero, -r, T(t)};
    const V3<T> v5{h, x, s};
    const V3<T> v8{-h, -x, s};
    const V3<T> v9{x, h, -s};
    const V3<T> v11{-x, h, -s};
    const V3<T> v12{-x, -h, -s};

    const V3<T> n1 = cross3(v11 - v3, v12 - v3);
    const V3<T> n2 = cross3(v8 - v2, v12 - v2);
    const V3<T> n4 = cross3(v1 - v5, v4 - v8);
    const V3<T> n5 = cross3(v1 - v9, v4 - v8);

    const T a1 = dot3(n1, v1 - v3);
    const T a2 = dot3(n2, v5 - v2);
    const T a4 = dot3(n4, v1 - v4);
    const T a5 = dot3(n5, v1 - v4);

    const T p5 = h + r - x;
    return {(a1 * a1 - dot3(n1, n1)) / (h * h),
            a2 * a2 - dot3(n2, n2),
            (a5 * a5 - T(dl.d3 * dl.d3) * dot3(n5, n5)) / (p5 * p5),
            a4 * a4 - T(dl.d2 * dl.d2) * dot3(n4, n4)};
}

void check_prefactors(const std::array<double, 4>& q, double tol = 1e-9) {
    const double h = q[2], pref = q[2] + q[3] - q[0];
    if (std::abs(h) < tol)
        throw PrefactorSingular("h = " + std::to_string(h) + " is below tolerance");
    if (std::abs(pref) < tol)
        throw PrefactorSingular("h + r - x = " + std::to_string(pref) + " is below tolerance");
}

// Solves A d = b by Gaussian elimination with partial pivoting; returns false
// when a pivot falls below the relative threshold.
bool solve4(std::array<std::array<double, 4>, 4> A, std::array<double, 4> b,
            std::array<double, 4>& d) {
    double amax = 0.0;
    for (const auto& row : A)
        for (double v : row) amax = std::max(amax, std::abs(v));
    if (amax == 0.0) return false;

    std::array<int, 4> perm{0, 1, 2, 3};
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int rr = c + 1; rr < 4; ++rr)
            if (std::abs(A[static_cast<size_t>(perm[static_cast<size_t>(rr)])][static_cast<size_t>(c)]) >
                std::abs(A[static_cast<size_t>(perm[static_cast<size_t>(p)])][static_cast<size_t>(c)]))
                p = rr;
        std::swap(perm[static_cast<size_t>(c)], perm[static_cast<size_t>(p)]);
        const double pivot = A[static_cast<size_t>(perm[static_cast<size_t>(c)])][static_cast<size_t>(c)];
        if (std::abs(pivot) < 1e-14 * amax) return false;
        for (int rr = c + 1; rr < 4; ++rr) {
            auto& row = A[static_cast<size_t>(perm[static_cast<size_t>(rr)])];
            const double f = row[static_cast<size_t>(c)] / pivot;
            if (f == 0.0) continue;
            for (int cc = c; cc < 4; ++cc)
                row[static_cast<size_t>(cc)] -=
                    f * A[static_cast<size_t>(perm[static_cast<size_t>(c)])][static_cast<size_t>(cc)];
            b[static_cast<size_t>(perm[static_cast<size_t>(rr)])] -=
                f * b[static_cast<size_t>(perm[static_cast<size_t>(c)])];
        }
    }
    for (int c = 3; c >= 0; --c) {
        double acc = b[static_cast<size_t>(perm[static_cast<size_t>(c)])];
        for (int cc = c + 1; cc < 4; ++cc)
            acc -= A[static_cast<size_t>(perm[static_cast<size_t>(c)])][static_cast<size_t>(cc)] *
                   d[static_cast<size_t>(cc)];
        d[static_cast<size_t>(c)] = acc / A[static_cast<size_t>(perm[static_cast<size_t>(c)])][static_cast<size_t>(c)];
    }
    return true;
}

double condition_inf(const std::array<std::array<double, 4>, 4>& A) {
    // explicit inverse by Gauss-Jordan; the matrix is 4x4
    std::array<std::array<double, 8>, 4> M{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
        M[static_cast<size_t>(i)][static_cast<size_t>(4 + i)] = 1.0;
    }
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(M[static_cast<size_t>(r)][static_cast<size_t>(c)]) > std::abs(M[static_cast<size_t>(p)][static_cast<size_t>(c)])) p = r;
        std::swap(M[static_cast<size_t>(c)], M[static_cast<size_t>(p)]);
        const double pivot = M[static_cast<size_t>(c)][static_cast<size_t>(c)];
        if (pivot == 0.0) return std::numeric_limits<double>::infinity();
        for (int j = 0; j < 8; ++j) M[static_cast<size_t>(c)][static_cast<size_t>(j)] /= pivot;
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            const double f = M[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (f == 0.0) continue;
            for (int j = 0; j < 8; ++j)
                M[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * M[static_cast<size_t>(c)][static_cast<size_t>(j)];
        }
    }
    double norm_a = 0.0, norm_inv = 0.0;
    for (int i = 0; i < 4; ++i) {
        double ra = 0.0, ri = 0.0;
        for (int j = 0; j < 4; ++j) {
            ra += std::abs(A[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            ri += std::abs(M[static_cast<size_t>(i)][static_cast<size_t>(4 + j)]);
        }
        norm_a = std::max(norm_a, ra);
        norm_inv = std::max(norm_inv, ri);
    }
    return norm_a * norm_inv;
}

} // namespace

std::array<Vec3, 12> vertices_from_params(const ConstructionParams& p) {
    const double t = p.t, x = p.x, s = p.s, h = p.h, r = p.r;
    return {Vec3{r, 0, -t},  Vec3{-r, 0, -t}, Vec3{0, r, t},   Vec3{0, -r, t},
            Vec3{h, x, s},   Vec3{-h, x, s},  Vec3{h, -x, s},  Vec3{-h, -x, s},
            Vec3{x, h, -s},  Vec3{x, -h, -s}, Vec3{-x, h, -s}, Vec3{-x, -h, -s}};
}

std::array<Vec3, 5> normals_from_params(const ConstructionParams& p) {
    const auto v = vertices_from_params(p);
    return {cross(v[10] - v[2], v[11] - v[2]),
            cross(v[7] - v[1], v[11] - v[1]),
            cross(v[0] - v[1], v[2] - v[3]),
            cross(v[0] - v[4], v[3] - v[7]),
            cross(v[0] - v[8], v[3] - v[7])};
}

std::array<double, 4> residual(const std::array<double, 4>& q, const TargetDeltas& deltas) {
    check_prefactors(q);
    return residual_eval<double>(q[0], q[1], q[2], q[3], deltas.d1 / 2.0, deltas);
}

std::array<std::array<double, 4>, 4> jacobian(const std::array<double, 4>& q,
                                              const TargetDeltas& deltas) {
    check_prefactors(q);
    const auto f = residual_eval<Dual>(Dual::seeded(q[0], 0), Dual::seeded(q[1], 1),
                                       Dual::seeded(q[2], 2), Dual::seeded(q[3], 3),
                                       deltas.d1 / 2.0, deltas);
    std::array<std::array<double, 4>, 4> J{};
    for (int i = 0; i < 4; ++i) J[static_cast<size_t>(i)] = f[static_cast<size_t>(i)].g;
    return J;
}

std::pair<ConstructionParams, SolveTrace> newton_solve(const TargetDeltas& deltas,
                                                       std::array<double, 4> init,
                                                       double tol, int max_iter) {
    if (deltas.d1 <= 0.0 || deltas.d2 <= 0.0 || deltas.d3 <= 0.0)
        throw std::invalid_argument("delta targets must be positive");

    SolveTrace trace;
    std::array<double, 4> q = init;
    const double t = deltas.d1 / 2.0;

    for (;;) {
        check_prefactors(q);
        const auto f = residual_eval<Dual>(Dual::seeded(q[0], 0), Dual::seeded(q[1], 1),
                                           Dual::seeded(q[2], 2), Dual::seeded(q[3], 3), t,
                                           deltas);
        std::array<std::array<double, 4>, 4> J{};
        std::array<double, 4> rhs{};
        double rn = 0.0;
        for (int i = 0; i < 4; ++i) {
            J[static_cast<size_t>(i)] = f[static_cast<size_t>(i)].g;
            rhs[static_cast<size_t>(i)] = -f[static_cast<size_t>(i)].v;
            rn = std::max(rn, std::abs(f[static_cast<size_t>(i)].v));
        }
        trace.iterates.push_back(q);
        trace.residual_norms.push_back(rn);

        if (!std::isfinite(rn))
            throw NoConvergence("residual diverged to a non-finite value", trace);
        if (rn <= tol) {
            trace.converged = true;
            trace.jacobian_condition = condition_inf(J);
            return {ConstructionParams{t, q[0], q[1], q[2], q[3]}, trace};
        }
        if (trace.steps() >= max_iter)
            throw NoConvergence("iteration budget of " + std::to_string(max_iter) +
                                    " Newton steps exhausted",
                                trace);

        std::array<double, 4> d{};
        if (!solve4(J, rhs, d)) throw SingularJacobian("Jacobian pivot below tolerance", trace);
        for (int i = 0; i < 4; ++i) q[static_cast<size_t>(i)] += d[static_cast<size_t>(i)];
        if (!(std::isfinite(q[0]) && std::isfinite(q[1]) && std::isfinite(q[2]) &&
              std::isfinite(q[3])))
            throw NoConvergence("iterate diverged to a non-finite value", trace);
    }
}

FamilyMember build_family_member(const TargetDeltas& deltas,
                                 std::optional<std::array<double, 4>> warm_start,
                                 double geometry_tolerance) {
    auto [params, trace] = newton_solve(deltas, warm_start.value_or(kDefaultNewtonInit));
    const auto verts = vertices_from_params(params);
    Polytope poly = convex_hull(verts, geometry_tolerance);
    ReducednessReport red = is_reduced(poly);

    FamilyMember member{params, std::move(trace), std::move(poly), red, 0.0, 0.0};
    member.rho_facet_v1v9v10_edge_v11v12 =
        affine_hull_distance(std::array{verts[0], verts[8], verts[9]},
                             std::array{verts[10], verts[11]}, geometry_tolerance);
    member.rho_edge_v5v9_edge_v8v12 =
        affine_hull_distance(std::array{verts[4], verts[8]},
                             std::array{verts[7], verts[11]}, geometry_tolerance);
    if (!red.reduced)
        throw VerificationFailed("family member is not reduced at deltas (" +
                                 std::to_string(deltas.d1) + ", " + std::to_string(deltas.d2) +
                                 ", " + std::to_string(deltas.d3) + ")");
    return member;
}

std::vector<SweepRow> sweep_family(const SweepAxis& a1, const SweepAxis& a2,
                                   const SweepAxis& a3, double geometry_tolerance) {
    auto grid = [](const SweepAxis& a) {
        std::vector<double> g;
        if (a.n <= 1) {
            g.push_back(a.lo);
        } else {
            for (int i = 0; i < a.n; ++i)
                g.push_back(a.lo + (a.hi - a.lo) * static_cast<double>(i) /
                                       static_cast<double>(a.n - 1));
        }
        return g;
    };
    const std::vector<double> g1 = grid(a1), g2 = grid(a2), g3 = grid(a3);

    struct Cell {
        int i, j, k;
    };
    std::vector<Cell> cells;
    for (int i = 0; i < static_cast<int>(g1.size()); ++i)
        for (int j = 0; j < static_cast<int>(g2.size()); ++j)
            for (int k = 0; k < static_cast<int>(g3.size()); ++k) cells.push_back({i, j, k});

    const TargetDeltas base{};
    auto deltas_of = [&](const Cell& c) {
        return TargetDeltas{g1[static_cast<size_t>(c.i)], g2[static_cast<size_t>(c.j)],
                            g3[static_cast<size_t>(c.k)]};
    };

    // wavefront center: the cell nearest the default deltas
    int center = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
        TargetDeltas d = deltas_of(cells[static_cast<size_t>(c)]);
        double dist = std::abs(d.d1 - base.d1) + std::abs(d.d2 - base.d2) + std::abs(d.d3 - base.d3);
        if (dist < best) {
            best = dist;
            center = c;
        }
    }

    auto grid_dist = [&](const Cell& a, const Cell& b) {
        return std::abs(a.i - b.i) + std::abs(a.j - b.j) + std::abs(a.k - b.k);
    };
    std::vector<int> order(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return grid_dist(cells[static_cast<size_t>(a)], cells[static_cast<size_t>(center)]) <
               grid_dist(cells[static_cast<size_t>(b)], cells[static_cast<size_t>(center)]);
    });

    std::vector<SweepRow> rows;
    std::vector<int> solved_cells;
    std::vector<std::array<double, 4>> solved_q;
    for (int idx : order) {
        const Cell& cell = cells[static_cast<size_t>(idx)];
        SweepRow row;
        row.deltas = deltas_of(cell);

        std::array<double, 4> init = kDefaultNewtonInit;
        int nearest = -1, nearest_d = std::numeric_limits<int>::max();
        for (size_t sidx = 0; sidx < solved_cells.size(); ++sidx) {
            int d = grid_dist(cells[static_cast<size_t>(solved_cells[sidx])], cell);
            if (d < nearest_d) {
                nearest_d = d;
                nearest = static_cast<int>(sidx);
            }
        }
        if (nearest >= 0) init = solved_q[static_cast<size_t>(nearest)];

        try {
            auto [params, trace] = newton_solve(row.deltas, init);
            row.q = {params.x, params.s, params.h, params.r};
            row.solved = true;
            row.iterations = trace.steps();
            solved_cells.push_back(idx);
            solved_q.push_back(row.q);
            try {
                Polytope poly = convex_hull(vertices_from_params(params), geometry_tolerance);
                ReducednessReport red = is_reduced(poly);
                row.reduced = red.reduced;
                row.omega = red.omega;
            } catch (const std::exception& e) {
                row.note = std::string("geometry: ") + e.what();
            }
        } catch (const NoConvergence& e) {
            row.iterations = e.trace.steps();
            row.note = std::string("solver: ") + e.what();
        } catch (const std::exception& e) {
            row.note = std::string("solver: ") + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace redpoly
