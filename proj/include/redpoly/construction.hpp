#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "redpoly/polytope.hpp"
#include "redpoly/reduced.hpp"

namespace redpoly {

// Distance targets of the three edge-pair equations. Values below 1 are
// accepted (the solver does not care) but the resulting polytope is then
// never reduced: the corresponding edge pair undercuts the unit vertex-facet
// distances.
struct TargetDeltas {
    double d1 = 1.1;
    double d2 = 1.003;
    double d3 = 1.004;
};

// Shape parameters of the 12-vertex family; all positive for a valid member,
// with h and h + r - x away from zero so the reduced residual is defined.
struct ConstructionParams {
    double t = 0.0, x = 0.0, s = 0.0, h = 0.0, r = 0.0;
};

struct SolveTrace {
    std::vector<std::array<double, 4>> iterates;   // (x,s,h,r) per iteration
    std::vector<double> residual_norms;            // max-norm, one per iterate
    double jacobian_condition = 0.0;               // inf-norm estimate at the last iterate
    bool converged = false;
    int steps() const { return static_cast<int>(iterates.size()) - 1; }
};

struct SingularJacobian : std::runtime_error {
    SolveTrace trace;
    SingularJacobian(std::string msg, SolveTrace t)
        : std::runtime_error(std::move(msg)), trace(std::move(t)) {}
};

struct NoConvergence : std::runtime_error {
    SolveTrace trace;
    NoConvergence(std::string msg, SolveTrace t)
        : std::runtime_error(std::move(msg)), trace(std::move(t)) {}
};

// The 12 family vertices for given parameters, indexed 0..11. The vertex set
// is invariant under (x,y,z) -> (-x,y,z), (x,-y,z) and (y,x,-z) for every
// parameter choice.
std::array<Vec3, 12> vertices_from_params(const ConstructionParams& p);

// The five cross-product normals of the defining distance equations;
// the third one is (0, 0, 4 r^2) identically.
std::array<Vec3, 5> normals_from_params(const ConstructionParams& p);

// Left-hand sides of the four reduced distance equations in the unknowns
// q = (x,s,h,r), with t eliminated as d1/2. Ordered: the unit vertex-facet
// equation scaled by h^-2, the other unit vertex-facet equation, the d3
// edge-pair equation scaled by (h+r-x)^-2, the d2 edge-pair equation.
// Throws PrefactorSingular when |h| or |h+r-x| is below tolerance.
std::array<double, 4> residual(const std::array<double, 4>& q, const TargetDeltas& deltas);

// Exact forward-mode derivative of the residual (dual-number arithmetic),
// J[i][j] = d residual_i / d q_j.
std::array<std::array<double, 4>, 4> jacobian(const std::array<double, 4>& q,
                                              const TargetDeltas& deltas);

inline constexpr std::array<double, 4> kDefaultNewtonInit{0.62, 0.13, 0.09, 0.35};

// Full-step Newton iteration on the residual, no damping. Throws
// SingularJacobian or NoConvergence with the trace attached.
std::pair<ConstructionParams, SolveTrace> newton_solve(const TargetDeltas& deltas,
                                                       std::array<double, 4> init,
                                                       double tol = 1e-14,
                                                       int max_iter = 50);

struct FamilyMember {
    ConstructionParams params;
    SolveTrace trace;
    Polytope polytope;
    ReducednessReport reducedness;
    double rho_facet_v1v9v10_edge_v11v12 = 0.0;
    double rho_edge_v5v9_edge_v8v12 = 0.0;
};

// Solves for the deltas, hulls the 12 vertices, verifies reducedness and
// reports the two spare distances that have to stay above the width. Throws
// VerificationFailed when the member is not reduced, and propagates solver
// errors.
FamilyMember build_family_member(const TargetDeltas& deltas,
                                 std::optional<std::array<double, 4>> warm_start = {},
                                 double geometry_tolerance = 1e-9);

struct SweepAxis {
    double lo = 0.0, hi = 0.0;
    int n = 1;
};

struct SweepRow {
    TargetDeltas deltas;
    std::array<double, 4> q{};
    bool solved = false;
    bool reduced = false;
    double omega = 0.0;
    int iterations = 0;
    std::string note;
};

// Grid continuation over the delta box: cells are solved in a wavefront from
// the cell nearest the default deltas, each warm-started from the nearest
// already solved cell. Failures become rows, not exceptions. Rows are emitted
// in traversal order.
std::vector<SweepRow> sweep_family(const SweepAxis& a1, const SweepAxis& a2,
                                   const SweepAxis& a3, double geometry_tolerance = 1e-9);

} // namespace redpoly
