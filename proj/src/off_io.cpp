#include "redpoly/off_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "redpoly/errors.hpp"

namespace redpoly {

namespace {

// Reads the next line that still has content after comment stripping.
bool next_content_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) return true;
    }
    return false;
}

} // namespace

Polytope parse_off(std::istream& in, double tolerance) {
    int lineno = 0;
    std::string line;

    if (!next_content_line(in, line, lineno)) throw ParseError(lineno + 1, "empty document");
    {
        std::istringstream ls(line);
        std::string header, extra;
        ls >> header;
        if (header != "OFF" || (ls >> extra))
            throw ParseError(lineno, "expected OFF header");
    }

    long nv = 0, nf = 0, ne = 0;
    if (!next_content_line(in, line, lineno)) throw ParseError(lineno + 1, "missing count line");
    {
        std::istringstream ls(line);
        std::string extra;
        if (!(ls >> nv >> nf >> ne) || (ls >> extra))
            throw ParseError(lineno, "count line must be 'V F E'");
        if (nv < 0 || nf < 0) throw ParseError(lineno, "negative count");
    }

    std::vector<Vec3> verts;
    verts.reserve(static_cast<size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        if (!next_content_line(in, line, lineno))
            throw ParseError(lineno + 1, "expected " + std::to_string(nv) +
                                             " vertex lines, got " + std::to_string(i));
        std::istringstream ls(line);
        Vec3 v;
        std::string extra;
        if (!(ls >> v.x >> v.y >> v.z) || (ls >> extra))
            throw ParseError(lineno, "vertex line must be three coordinates");
        if (!v.finite()) throw ParseError(lineno, "non-finite coordinate");
        verts.push_back(v);
    }

    std::vector<std::vector<int>> facets;
    facets.reserve(static_cast<size_t>(nf));
    for (long f = 0; f < nf; ++f) {
        if (!next_content_line(in, line, lineno))
            throw ParseError(lineno + 1, "expected " + std::to_string(nf) +
                                             " facet lines, got " + std::to_string(f));
        std::istringstream ls(line);
        long cnt = 0;
        if (!(ls >> cnt) || cnt < 3)
            throw ParseError(lineno, "facet line must start with a count of at least 3");
        std::vector<int> cyc;
        for (long k = 0; k < cnt; ++k) {
            long idx;
            if (!(ls >> idx)) throw ParseError(lineno, "facet line has fewer indices than its count");
            if (idx < 0 || idx >= nv)
                throw ParseError(lineno, "facet index " + std::to_string(idx) + " out of range");
            cyc.push_back(static_cast<int>(idx));
        }
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing tokens on facet line");
        facets.push_back(std::move(cyc));
    }

    return Polytope(std::move(verts), std::move(facets), tolerance);
}

Polytope parse_off(const std::string& text, double tolerance) {
    std::istringstream in(text);
    return parse_off(in, tolerance);
}

Polytope read_off_file(const std::string& path, double tolerance) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_off(in, tolerance);
}

std::string write_off(const Polytope& P) {
    std::ostringstream out;
    out << "OFF\n"
        << P.vertex_count() << ' ' << P.facet_count() << ' ' << P.edge_count() << '\n';
    char buf[96];
    for (const Vec3& v : P.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& cyc : P.facets()) {
        out << cyc.size();
        for (int i : cyc) out << ' ' << i;
        out << '\n';
    }
    return out.str();
}

} // namespace redpoly
