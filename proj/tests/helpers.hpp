#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "redpoly/construction.hpp"
#include "redpoly/polytope.hpp"

namespace redpoly::testing {

inline Polytope make_cube() {
    std::vector<Vec3> pts;
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y)
            for (int z = 0; z <= 1; ++z) pts.push_back({double(x), double(y), double(z)});
    return convex_hull(pts);
}

// Regular tetrahedron with unit edge length.
inline Polytope make_tetra() {
    const double s = 1.0 / std::sqrt(8.0);
    std::vector<Vec3> pts{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    return convex_hull(pts);
}

// Equilateral triangular prism, side 1, height 0.8.
inline Polytope make_prism() {
    const double h = std::sqrt(3.0) / 2.0;
    std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0.5, h, 0},
                          {0, 0, 0.8}, {1, 0, 0.8}, {0.5, h, 0.8}};
    return convex_hull(pts);
}

// Square pyramid, base side 2, apex height 0.5 (a flat pyramid whose minimum
// width is the apex-base distance).
inline Polytope make_square_pyramid() {
    std::vector<Vec3> pts{{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}, {0, 0, 0.5}};
    return convex_hull(pts);
}

// Regular k-gonal pyramid: base circumradius 1, apex at the given height.
inline Polytope make_regular_pyramid(int k, double height) {
    std::vector<Vec3> pts;
    for (int i = 0; i < k; ++i) {
        double a = 2.0 * std::numbers::pi * i / k + std::numbers::pi / 2.0;
        pts.push_back({std::cos(a), std::sin(a), 0.0});
    }
    pts.push_back({0.0, 0.0, height});
    return convex_hull(pts);
}

inline Polytope make_reference_polytope() {
    auto [params, trace] = newton_solve(TargetDeltas{}, kDefaultNewtonInit);
    const auto v = vertices_from_params(params);
    return convex_hull(std::vector<Vec3>(v.begin(), v.end()));
}

inline Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Vec3 v;
    do {
        v = {nd(rng), nd(rng), nd(rng)};
    } while (norm(v) < 1e-6);
    return normalized(v);
}

// Rotation matrix rows from a random unit quaternion.
inline std::array<Vec3, 3> random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    double q0, q1, q2, q3, n;
    do {
        q0 = nd(rng); q1 = nd(rng); q2 = nd(rng); q3 = nd(rng);
        n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    } while (n < 1e-6);
    q0 /= n; q1 /= n; q2 /= n; q3 /= n;
    return {Vec3{1 - 2 * (q2 * q2 + q3 * q3), 2 * (q1 * q2 - q0 * q3), 2 * (q1 * q3 + q0 * q2)},
            Vec3{2 * (q1 * q2 + q0 * q3), 1 - 2 * (q1 * q1 + q3 * q3), 2 * (q2 * q3 - q0 * q1)},
            Vec3{2 * (q1 * q3 - q0 * q2), 2 * (q2 * q3 + q0 * q1), 1 - 2 * (q1 * q1 + q2 * q2)}};
}

inline Vec3 apply(const std::array<Vec3, 3>& R, const Vec3& v) {
    return {dot(R[0], v), dot(R[1], v), dot(R[2], v)};
}

inline Polytope transformed(const Polytope& P, const std::array<Vec3, 3>& R, double scale,
                            const Vec3& shift) {
    std::vector<Vec3> pts;
    for (const Vec3& v : P.vertices()) pts.push_back(apply(R, v) * scale + shift);
    return convex_hull(pts, P.tolerance());
}

// Random polytope with all sample points on the unit sphere, so every point
// is a vertex of its hull.
inline Polytope random_sphere_polytope(std::mt19937_64& rng, int nverts) {
    std::vector<Vec3> pts;
    for (int i = 0; i < nverts; ++i) pts.push_back(random_unit(rng));
    return convex_hull(pts);
}

// Golden-spiral directions over the upper hemisphere (widths are symmetric
// under negation, so a hemisphere covers the sphere).
inline std::vector<Vec3> fibonacci_hemisphere(int n) {
    std::vector<Vec3> dirs;
    dirs.reserve(static_cast<size_t>(n));
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        double z = (i + 0.5) / n;
        double r = std::sqrt(1.0 - z * z);
        double th = ga * i;
        dirs.push_back({r * std::cos(th), r * std::sin(th), z});
    }
    return dirs;
}

// Independent width-minimum oracle: exhaustive sampling over quasi-uniform
// directions, no candidate scheme involved.
inline double sampled_min_width(const Polytope& P, int n) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& u : fibonacci_hemisphere(n)) {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (const Vec3& v : P.vertices()) {
            double t = dot(u, v);
            hi = std::max(hi, t);
            lo = std::min(lo, t);
        }
        best = std::min(best, hi - lo);
    }
    return best;
}

} // namespace redpoly::testing
