#pragma once

#include <iosfwd>
#include <string>

#include "redpoly/polytope.hpp"

namespace redpoly {

// Parses an OFF document: "OFF" header, a "V F E" count line, V coordinate
// lines, then F facet lines "n i1 ... in". '#' starts a comment anywhere. The
// edge count in the header is ignored. The resulting polytope is fully
// re-validated; non-convex input is rejected. Throws ParseError (with the
// offending line), NotConvex or DegenerateInput.
Polytope parse_off(std::istream& in, double tolerance = 1e-9);
Polytope parse_off(const std::string& text, double tolerance = 1e-9);
Polytope read_off_file(const std::string& path, double tolerance = 1e-9);

// Serializes with 17 significant digits so coordinates round-trip exactly;
// output is byte-identical for equal polytopes.
std::string write_off(const Polytope& P);

} // namespace redpoly
