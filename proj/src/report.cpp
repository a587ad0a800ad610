#include "redpoly/report.hpp"

#include <cstdio>

namespace redpoly {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(const std::string& bytes) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

namespace {

const char* kind_name(FaceKind k) {
    switch (k) {
        case FaceKind::vertex: return "vertex";
        case FaceKind::edge: return "edge";
        default: return "facet";
    }
}

Json vec_to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

} // namespace

Json face_to_json(const Face& f) {
    return Json{{"kind", kind_name(f.kind)}, {"vertices", f.vertex_indices}};
}

Json pair_to_json(const AntipodalPair& p) {
    return Json{{"face1", face_to_json(p.face1)},
                {"face2", face_to_json(p.face2)},
                {"direction", vec_to_json(p.direction)},
                {"distance", p.distance}};
}

Json report_envelope(const std::string& command, const std::optional<std::string>& input_path,
                     const std::optional<std::string>& input_bytes, double tolerance) {
    Json inputs;
    if (input_path) inputs["file"] = *input_path;
    if (input_bytes) inputs["file_hash"] = hash_hex(*input_bytes);
    inputs["tolerance"] = tolerance;
    return Json{{"schema_version", 1}, {"command", command}, {"inputs", inputs},
                {"outputs", Json::object()}};
}

Json width_report_to_json(const WidthReport& report) {
    Json pairs = Json::array();
    for (const auto& p : report.attaining_pairs) pairs.push_back(pair_to_json(p));
    return Json{{"omega", report.omega},
                {"candidate_count", report.candidate_count},
                {"attaining_pairs", pairs}};
}

Json reducedness_to_json(const ReducednessReport& report) {
    Json statuses = Json::array();
    for (const auto& s : report.vertex_status) {
        Json st{{"vertex", s.vertex}, {"marked", s.marked}};
        if (s.witness_facet) {
            st["witness_facet"] = face_to_json(*s.witness_facet);
            st["distance"] = s.distance;
        }
        if (s.projection_in_relint) st["projection_in_relint"] = *s.projection_in_relint;
        if (s.near_miss) st["near_miss"] = true;
        statuses.push_back(std::move(st));
    }
    return Json{{"omega", report.omega},
                {"reduced", report.reduced},
                {"candidate_count", report.candidate_count},
                {"vertex_status", statuses}};
}

Json certificate_to_json(const std::optional<Certificate>& cert) {
    if (!cert) return Json{{"found", false}};
    const ConditionReport& r = cert->report;
    Json edge_pairs = Json::array();
    for (const auto& e : r.edge_pairs)
        edge_pairs.push_back(Json{{"fan_edge", face_to_json(e.fan_edge)},
                                  {"facet_edge", face_to_json(e.facet_edge)},
                                  {"antipodal", e.antipodal}});
    Json fv_pairs = Json::array();
    for (const auto& e : r.facet_vertex_pairs)
        fv_pairs.push_back(Json{{"fan_facet", face_to_json(e.fan_facet)},
                                {"facet_vertex", e.facet_vertex},
                                {"antipodal", e.antipodal},
                                {"distance", e.distance},
                                {"at_omega", e.at_omega}});
    return Json{{"found", true},
                {"omega", cert->omega},
                {"facet", face_to_json(r.facet)},
                {"vertex", r.vertex},
                {"alignment", Json{{"offset", r.alignment.offset}, {"groups", r.alignment.groups}}},
                {"holds_a", r.holds_a},
                {"rho_vertex_facet", r.rho_vertex_facet},
                {"holds_b", r.holds_b},
                {"edge_pairs", edge_pairs},
                {"holds_c", r.holds_c},
                {"facet_vertex_pairs", fv_pairs}};
}

Json antipodal_list_to_json(const std::vector<AntipodalPair>& pairs) {
    Json arr = Json::array();
    for (const auto& p : pairs) arr.push_back(pair_to_json(p));
    return Json{{"count", pairs.size()}, {"pairs", arr}};
}

Json solve_trace_to_json(const SolveTrace& trace, bool include_iterates) {
    Json t{{"converged", trace.converged},
           {"steps", trace.steps()},
           {"residual_norms", trace.residual_norms},
           {"jacobian_condition", trace.jacobian_condition}};
    if (include_iterates) {
        Json its = Json::array();
        for (const auto& q : trace.iterates) its.push_back(Json::array({q[0], q[1], q[2], q[3]}));
        t["iterates"] = its;
    }
    return t;
}

Json family_member_to_json(const FamilyMember& member, bool include_iterates) {
    return Json{{"params",
                 Json{{"t", member.params.t},
                      {"x", member.params.x},
                      {"s", member.params.s},
                      {"h", member.params.h},
                      {"r", member.params.r}}},
                {"residual_max_norm", member.trace.residual_norms.back()},
                {"trace", solve_trace_to_json(member.trace, include_iterates)},
                {"reducedness", reducedness_to_json(member.reducedness)},
                {"rho_facet_v1v9v10_edge_v11v12", member.rho_facet_v1v9v10_edge_v11v12},
                {"rho_edge_v5v9_edge_v8v12", member.rho_edge_v5v9_edge_v8v12}};
}

Json sweep_to_json(const std::vector<SweepRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json row{{"deltas", Json::array({r.deltas.d1, r.deltas.d2, r.deltas.d3})},
                 {"solved", r.solved},
                 {"iterations", r.iterations}};
        if (r.solved) {
            row["params"] = Json::array({r.q[0], r.q[1], r.q[2], r.q[3]});
            row["reduced"] = r.reduced;
            row["omega"] = r.omega;
        }
        if (!r.note.empty()) row["note"] = r.note;
        arr.push_back(std::move(row));
    }
    return Json{{"rows", arr}};
}

} // namespace redpoly
