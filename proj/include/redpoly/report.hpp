#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "redpoly/antipodal.hpp"
#include "redpoly/certificate.hpp"
#include "redpoly/construction.hpp"
#include "redpoly/reduced.hpp"

namespace redpoly {

using Json = nlohmann::ordered_json;

// FNV-1a over the raw bytes; used to fingerprint input files in reports.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

Json face_to_json(const Face& f);
Json pair_to_json(const AntipodalPair& p);

// Schema-versioned report envelope: {"schema_version", "command", "inputs",
// "outputs"}; key order is fixed so equal inputs serialize byte-identically.
Json report_envelope(const std::string& command, const std::optional<std::string>& input_path,
                     const std::optional<std::string>& input_bytes, double tolerance);

Json width_report_to_json(const WidthReport& report);
Json reducedness_to_json(const ReducednessReport& report);
Json certificate_to_json(const std::optional<Certificate>& cert);
Json antipodal_list_to_json(const std::vector<AntipodalPair>& pairs);
Json solve_trace_to_json(const SolveTrace& trace, bool include_iterates);
Json family_member_to_json(const FamilyMember& member, bool include_iterates);
Json sweep_to_json(const std::vector<SweepRow>& rows);

} // namespace redpoly
