#pragma once

#include <stdexcept>
#include <string>

namespace redpoly {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input point set is not affinely 3-dimensional. Carries the dimension that
// was actually achieved (0, 1 or 2).
struct DegenerateInput : GeometryError {
    int achieved_dimension;
    DegenerateInput(int dim, const std::string& msg)
        : GeometryError(msg), achieved_dimension(dim) {}
};

struct NotConvex : GeometryError {
    using GeometryError::GeometryError;
};

struct ZeroDirection : GeometryError {
    ZeroDirection() : GeometryError("direction vector must be nonzero") {}
};

struct NotAVertex : GeometryError {
    using GeometryError::GeometryError;
};

struct BadAlignment : GeometryError {
    using GeometryError::GeometryError;
};

struct ParseError : std::runtime_error {
    int line; // 1-based line number in the input
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

struct PrefactorSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace redpoly
