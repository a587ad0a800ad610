#include "redpoly/certificate.hpp"

#include <algorithm>
#include <map>

#include "redpoly/antipodal.hpp"
#include "redpoly/errors.hpp"

namespace redpoly {

VertexFan vertex_fan(const Polytope& P, int vertex) {
    if (vertex < 0 || vertex >= P.vertex_count())
        throw NotAVertex("vertex index " + std::to_string(vertex) + " out of range");

    // pred/succ of the vertex in each incident facet cycle
    std::map<int, int> succ_of_facet;  // facet -> successor neighbor
    std::map<int, int> facet_of_pred;  // predecessor neighbor -> facet
    for (int f : P.facets_at_vertex(vertex)) {
        const auto& cyc = P.facet(f);
        const size_t n = cyc.size();
        for (size_t i = 0; i < n; ++i) {
            if (cyc[i] != vertex) continue;
            succ_of_facet[f] = cyc[(i + 1) % n];
            facet_of_pred[cyc[(i + n - 1) % n]] = f;
            break;
        }
    }
    if (succ_of_facet.size() < 3) throw NotAVertex("vertex has fewer than 3 incident facets");

    // With facets counterclockwise from outside, stepping facet -> successor
    // edge -> next facet walks the neighbors clockwise as seen from outside.
    VertexFan fan;
    fan.vertex = vertex;
    int f0 = succ_of_facet.begin()->first;
    int f = f0;
    do {
        int s = succ_of_facet.at(f);
        int fn = facet_of_pred.at(s);
        fan.neighbors.push_back(s);
        fan.facets.push_back(fn);
        f = fn;
    } while (f != f0 && fan.neighbors.size() <= succ_of_facet.size());
    if (f != f0 || fan.neighbors.size() != succ_of_facet.size())
        throw GeometryError("vertex fan does not close into a single cycle");

    // Rotate so the smallest neighbor leads.
    size_t lead = static_cast<size_t>(
        std::min_element(fan.neighbors.begin(), fan.neighbors.end()) - fan.neighbors.begin());
    std::rotate(fan.neighbors.begin(), fan.neighbors.begin() + static_cast<std::ptrdiff_t>(lead),
                fan.neighbors.end());
    std::rotate(fan.facets.begin(), fan.facets.begin() + static_cast<std::ptrdiff_t>(lead),
                fan.facets.end());
    return fan;
}

std::vector<Alignment> enumerate_alignments(int fan_degree, int facet_edge_count) {
    std::vector<Alignment> out;
    if (facet_edge_count < 1 || fan_degree < facet_edge_count) return out;

    std::vector<std::vector<int>> compositions;
    std::vector<int> cur(static_cast<size_t>(facet_edge_count), 1);
    // lexicographic enumeration of compositions of fan_degree into k parts
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == facet_edge_count - 1) {
            cur[static_cast<size_t>(pos)] = remaining;
            compositions.push_back(cur);
            return;
        }
        for (int v = 1; v <= remaining - (facet_edge_count - 1 - pos); ++v) {
            cur[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, fan_degree);

    for (int offset = 0; offset < fan_degree; ++offset)
        for (const auto& comp : compositions) out.push_back({offset, comp});
    return out;
}

namespace {

ConditionReport check_conditions_impl(const Polytope& P, const Face& facet, int fi,
                                      const VertexFan& fan, const Alignment& alignment,
                                      double omega, bool stop_early) {
    const auto& cyc = P.facet(fi);
    const int k = static_cast<int>(cyc.size());
    const int m = fan.degree();

    if (static_cast<int>(alignment.groups.size()) != k)
        throw BadAlignment("alignment has " + std::to_string(alignment.groups.size()) +
                           " groups for a facet with " + std::to_string(k) + " edges");
    int sum = 0;
    for (int g : alignment.groups) {
        if (g < 1) throw BadAlignment("alignment group sizes must be positive");
        sum += g;
    }
    if (sum != m)
        throw BadAlignment("alignment group sizes sum to " + std::to_string(sum) +
                           ", fan degree is " + std::to_string(m));

    ConditionReport rep;
    rep.facet = facet;
    rep.vertex = fan.vertex;
    rep.alignment = alignment;
    rep.omega = omega;

    const double eps = P.abs_tolerance();
    const Face vface = Face::vertex(fan.vertex);

    // (a) the facet and the vertex are strictly antipodal at distance omega
    rep.rho_vertex_facet = rho(P, vface, facet);
    rep.holds_a = antipodal_witness(P, facet, vface).has_value() &&
                  std::abs(rep.rho_vertex_facet - omega) <= eps;
    if (stop_early && !rep.holds_a) return rep;

    const int offset = ((alignment.offset % m) + m) % m;
    std::vector<int> prefix(static_cast<size_t>(k), 0);
    for (int g = 1; g < k; ++g)
        prefix[static_cast<size_t>(g)] =
            prefix[static_cast<size_t>(g - 1)] + alignment.groups[static_cast<size_t>(g - 1)];

    // (b) each group's leading fan edge against the facet edge that ends at
    // the group's facet vertex (a_0 = a_k)
    rep.holds_b = true;
    for (int g = 0; g < k; ++g) {
        int lead = (offset + prefix[static_cast<size_t>(g)]) % m;
        EdgePairEvidence ev;
        ev.fan_edge = Face::edge(fan.vertex, fan.neighbors[static_cast<size_t>(lead)]);
        ev.facet_edge = Face::edge(cyc[static_cast<size_t>((g + k - 1) % k)],
                                   cyc[static_cast<size_t>(g)]);
        ev.antipodal = antipodal_witness(P, ev.fan_edge, ev.facet_edge).has_value();
        rep.holds_b = rep.holds_b && ev.antipodal;
        rep.edge_pairs.push_back(std::move(ev));
        if (stop_early && !rep.holds_b) return rep;
    }

    // (c) the group's fan facets against the group's facet vertex, with at
    // least one of them at distance omega
    rep.holds_c = true;
    for (int g = 0; g < k; ++g) {
        const Face avert = Face::vertex(cyc[static_cast<size_t>(g)]);
        bool any_at_omega = false;
        for (int l = 0; l < alignment.groups[static_cast<size_t>(g)]; ++l) {
            int pos = (offset + prefix[static_cast<size_t>(g)] + l) % m;
            FacetVertexEvidence ev;
            ev.fan_facet = P.facet_face(fan.facets[static_cast<size_t>(pos)]);
            ev.facet_vertex = cyc[static_cast<size_t>(g)];
            ev.antipodal = antipodal_witness(P, avert, ev.fan_facet).has_value();
            ev.distance = rho(P, avert, ev.fan_facet);
            ev.at_omega = std::abs(ev.distance - omega) <= eps;
            any_at_omega = any_at_omega || ev.at_omega;
            rep.holds_c = rep.holds_c && ev.antipodal;
            rep.facet_vertex_pairs.push_back(std::move(ev));
            if (stop_early && !rep.holds_c) return rep;
        }
        rep.holds_c = rep.holds_c && any_at_omega;
        if (stop_early && !rep.holds_c) return rep;
    }
    return rep;
}

} // namespace

ConditionReport check_conditions(const Polytope& P, const Face& facet, int vertex,
                                 const Alignment& alignment) {
    int fi = P.facet_index(facet);
    if (fi < 0) throw GeometryError("face is not a facet of the polytope");
    VertexFan fan = vertex_fan(P, vertex);
    double omega = minimum_width(P).omega;
    return check_conditions_impl(P, facet, fi, fan, alignment, omega, false);
}

std::optional<Certificate> scan_certificate(const Polytope& P) {
    const double omega = minimum_width(P).omega;

    std::vector<VertexFan> fans;
    fans.reserve(static_cast<size_t>(P.vertex_count()));
    for (int v = 0; v < P.vertex_count(); ++v) fans.push_back(vertex_fan(P, v));

    // Condition (a) does not depend on the alignment, so triples are pruned
    // on it before any alignment is tried.
    auto scan_pass = [&](bool degree_matched) -> std::optional<Certificate> {
        for (int f = 0; f < P.facet_count(); ++f) {
            const Face facet = P.facet_face(f);
            const int k = static_cast<int>(P.facet(f).size());
            for (int v = 0; v < P.vertex_count(); ++v) {
                const VertexFan& fan = fans[static_cast<size_t>(v)];
                const int m = fan.degree();
                if (degree_matched ? (m != k) : (m <= k)) continue;

                const Face vface = Face::vertex(v);
                if (!antipodal_witness(P, facet, vface) ||
                    std::abs(rho(P, vface, facet) - omega) > P.abs_tolerance())
                    continue;

                for (const Alignment& al : enumerate_alignments(m, k)) {
                    ConditionReport rep =
                        check_conditions_impl(P, facet, f, fan, al, omega, true);
                    if (rep.all_hold()) return Certificate{std::move(rep), omega};
                }
            }
        }
        return std::nullopt;
    };

    if (auto cert = scan_pass(true)) return cert;  // all group sizes 1 first
    return scan_pass(false);
}

} // namespace redpoly
