#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "redpoly/antipodal.hpp"
#include "redpoly/certificate.hpp"
#include "redpoly/construction.hpp"
#include "redpoly/errors.hpp"
#include "redpoly/off_io.hpp"
#include "redpoly/reduced.hpp"
#include "redpoly/report.hpp"

namespace {

using namespace redpoly;

double default_tolerance() {
    if (const char* env = std::getenv("REDUCEDPOLY_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
        std::cerr << "warning: ignoring invalid REDUCEDPOLY_TOL value '" << env << "'\n";
    }
    return 1e-9;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string face_str(const Face& f) {
    std::string s = "{";
    for (size_t i = 0; i < f.vertex_indices.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(f.vertex_indices[i]);
    }
    return s + "}";
}

struct Common {
    std::string file;
    bool json = false;
    double tol = default_tolerance();
};

int run_width(const Common& c) {
    std::string bytes = slurp(c.file);
    Polytope P = parse_off(bytes, c.tol);
    WidthReport report = minimum_width(P);
    if (c.json) {
        Json out = report_envelope("width", c.file, bytes, c.tol);
        out["outputs"] = width_report_to_json(report);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::printf("omega = %.17g  (%d candidate directions)\n", report.omega,
                report.candidate_count);
    for (const auto& p : report.attaining_pairs)
        std::printf("  %s -- %s  direction (%.12g, %.12g, %.12g)  distance %.17g\n",
                    face_str(p.face1).c_str(), face_str(p.face2).c_str(), p.direction.x,
                    p.direction.y, p.direction.z, p.distance);
    return 0;
}

int run_check(const Common& c) {
    std::string bytes = slurp(c.file);
    Polytope P = parse_off(bytes, c.tol);
    ReducednessReport report = is_reduced(P);
    if (c.json) {
        Json out = report_envelope("check", c.file, bytes, c.tol);
        out["outputs"] = reducedness_to_json(report);
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("omega = %.17g\n", report.omega);
        std::printf("%-8s %-7s %-22s %-22s %s\n", "vertex", "marked", "witness facet",
                    "distance", "proj in relint");
        for (const auto& s : report.vertex_status) {
            std::string facet = s.witness_facet ? face_str(*s.witness_facet) : "-";
            std::string dist = s.witness_facet ? std::to_string(s.distance) : "-";
            std::string relint =
                s.projection_in_relint ? (*s.projection_in_relint ? "yes" : "no") : "-";
            std::printf("%-8d %-7s %-22s %-22s %s%s\n", s.vertex, s.marked ? "yes" : "no",
                        facet.c_str(), dist.c_str(), relint.c_str(),
                        s.near_miss ? "  (near miss)" : "");
        }
        std::printf("reduced: %s\n", report.reduced ? "yes" : "no");
    }
    return report.reduced ? 0 : 1;
}

int run_certify(const Common& c) {
    std::string bytes = slurp(c.file);
    Polytope P = parse_off(bytes, c.tol);
    std::optional<Certificate> cert = scan_certificate(P);
    if (c.json) {
        Json out = report_envelope("certify", c.file, bytes, c.tol);
        out["outputs"] = certificate_to_json(cert);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (!cert) {
        std::printf("none found\n");
        return 0;
    }
    const ConditionReport& r = cert->report;
    std::printf("certificate: facet %s and vertex %d (omega = %.17g)\n",
                face_str(r.facet).c_str(), r.vertex, cert->omega);
    std::printf("  alignment offset %d, groups [", r.alignment.offset);
    for (size_t i = 0; i < r.alignment.groups.size(); ++i)
        std::printf("%s%d", i ? " " : "", r.alignment.groups[i]);
    std::printf("]\n  the polytope is not reduced\n");
    return 0;
}

int run_antipodal(const Common& c) {
    std::string bytes = slurp(c.file);
    Polytope P = parse_off(bytes, c.tol);
    auto pairs = strictly_antipodal_pairs(P);
    if (c.json) {
        Json out = report_envelope("antipodal", c.file, bytes, c.tol);
        out["outputs"] = antipodal_list_to_json(pairs);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::printf("%zu strictly antipodal pairs\n", pairs.size());
    for (const auto& p : pairs)
        std::printf("  %s -- %s  direction (%.12g, %.12g, %.12g)  distance %.17g\n",
                    face_str(p.face1).c_str(), face_str(p.face2).c_str(), p.direction.x,
                    p.direction.y, p.direction.z, p.distance);
    return 0;
}

int run_construct(double d1, double d2, double d3, const std::string& out_path, bool trace,
                  bool json, double tol) {
    TargetDeltas deltas{d1, d2, d3};
    FamilyMember member = build_family_member(deltas, std::nullopt, tol);

    std::string off = write_off(member.polytope);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << off;
    }

    Json rep = report_envelope("construct", out_path.empty() ? std::nullopt
                                                             : std::optional(out_path),
                               off, tol);
    rep["inputs"]["deltas"] = Json::array({d1, d2, d3});
    rep["outputs"] = family_member_to_json(member, trace);
    if (!out_path.empty()) {
        std::ofstream jout(out_path + ".json", std::ios::binary);
        if (!jout) throw std::runtime_error("cannot write " + out_path + ".json");
        jout << rep.dump(2) << "\n";
    }

    if (json) {
        std::cout << rep.dump(2) << "\n";
        return 0;
    }

    const ConstructionParams& p = member.params;
    std::printf("solved: t = %.17g\n        x = %.17g\n        s = %.17g\n"
                "        h = %.17g\n        r = %.17g\n",
                p.t, p.x, p.s, p.h, p.r);
    std::printf("residual max-norm %.3e after %d Newton steps\n",
                member.trace.residual_norms.back(), member.trace.steps());
    if (trace) {
        for (size_t i = 0; i < member.trace.residual_norms.size(); ++i)
            std::printf("  iter %2zu  q = (%.12g, %.12g, %.12g, %.12g)  |f| = %.3e\n", i,
                        member.trace.iterates[i][0], member.trace.iterates[i][1],
                        member.trace.iterates[i][2], member.trace.iterates[i][3],
                        member.trace.residual_norms[i]);
        std::printf("  jacobian condition (inf-norm): %.6g\n", member.trace.jacobian_condition);
    }
    std::printf("omega = %.17g, reduced: %s\n", member.reducedness.omega,
                member.reducedness.reduced ? "yes" : "no");
    std::printf("spare distances: %.13f, %.13f\n", member.rho_facet_v1v9v10_edge_v11v12,
                member.rho_edge_v5v9_edge_v8v12);
    if (!out_path.empty())
        std::printf("wrote %s and %s.json\n", out_path.c_str(), out_path.c_str());
    return 0;
}

struct Range {
    double lo = 0.0, hi = 0.0;
    int n = 1;
};

Range parse_range(const std::string& text) {
    Range r;
    char rest;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.n, &rest) != 3 || r.n < 1)
        throw CLI::ValidationError("range", "expected lo:hi:n with n >= 1, got '" + text + "'");
    return r;
}

int run_sweep(const std::string& r1, const std::string& r2, const std::string& r3,
              const std::string& out_path, double tol) {
    Range a = parse_range(r1), b = parse_range(r2), c = parse_range(r3);
    auto rows = sweep_family({a.lo, a.hi, a.n}, {b.lo, b.hi, b.n}, {c.lo, c.hi, c.n}, tol);

    Json out = report_envelope("sweep", std::nullopt, std::nullopt, tol);
    out["inputs"]["d1"] = r1;
    out["inputs"]["d2"] = r2;
    out["inputs"]["d3"] = r3;
    out["outputs"] = sweep_to_json(rows);

    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << out.dump(2) << "\n";

    int solved = 0, reduced = 0;
    for (const auto& row : rows) {
        solved += row.solved;
        reduced += row.reduced;
    }
    std::printf("%zu cells: %d solved, %d reduced; table written to %s\n", rows.size(), solved,
                reduced, out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reducedpoly: minimum width, strict antipodality and reducedness of convex "
                 "polytopes in R^3"};
    app.require_subcommand(1);

    Common cw, cc, cf, ca;
    auto add_common = [](CLI::App* sub, Common& c) {
        sub->add_option("file", c.file, "OFF file")->required();
        sub->add_flag("--json", c.json, "emit a JSON report");
        sub->add_option("--tol", c.tol, "geometry tolerance (default 1e-9, or REDUCEDPOLY_TOL)");
    };
    add_common(app.add_subcommand("width", "minimum width and attaining antipodal pairs"), cw);
    add_common(app.add_subcommand("check",
                                  "reducedness verdict; exit 0 reduced, 1 not reduced, 2 error"),
               cc);
    add_common(app.add_subcommand("certify", "scan for a non-reducedness certificate"), cf);
    add_common(app.add_subcommand("antipodal", "list all strictly antipodal face pairs"), ca);

    double d1 = 1.1, d2 = 1.003, d3 = 1.004;
    std::string out_off = "out.off";
    bool trace = false, cjson = false;
    double ctol = default_tolerance();
    CLI::App* construct = app.add_subcommand("construct", "solve for a reduced 12-vertex polytope");
    construct->add_option("--d1", d1, "first distance target")->required();
    construct->add_option("--d2", d2, "second distance target")->required();
    construct->add_option("--d3", d3, "third distance target")->required();
    construct->add_option("-o,--output", out_off, "output OFF path (default out.off)");
    construct->add_flag("--trace", trace, "print the Newton trace");
    construct->add_flag("--json", cjson, "emit a JSON report");
    construct->add_option("--tol", ctol, "geometry tolerance");

    std::string r1, r2, r3, sweep_out;
    double stol = default_tolerance();
    CLI::App* sweep = app.add_subcommand("sweep", "grid continuation over delta targets");
    sweep->add_option("--d1", r1, "range lo:hi:n")->required();
    sweep->add_option("--d2", r2, "range lo:hi:n")->required();
    sweep->add_option("--d3", r3, "range lo:hi:n")->required();
    sweep->add_option("-o,--output", sweep_out, "output JSON table")->required();
    sweep->add_option("--tol", stol, "geometry tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("width")) return run_width(cw);
        if (app.got_subcommand("check")) return run_check(cc);
        if (app.got_subcommand("certify")) return run_certify(cf);
        if (app.got_subcommand("antipodal")) return run_antipodal(ca);
        if (app.got_subcommand("construct"))
            return run_construct(d1, d2, d3, out_off, trace, cjson, ctol);
        if (app.got_subcommand("sweep")) return run_sweep(r1, r2, r3, sweep_out, stol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
