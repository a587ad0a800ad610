// Acceptance suite: one line per criterion, exit code = number of failures.
// Criteria 1 and 3 drive the command-line binary; everything else runs
// in-process.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "redpoly/antipodal.hpp"
#include "redpoly/certificate.hpp"
#include "redpoly/construction.hpp"
#include "redpoly/off_io.hpp"
#include "redpoly/reduced.hpp"

using namespace redpoly;
using namespace redpoly::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, bool pass, const std::string& label, const std::string& detail = "") {
    std::printf("%s  %2d. %s%s%s\n", pass ? "PASS" : "FAIL", number, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string path = (fs::temp_directory_path() / "redpoly_acceptance_out.txt").string();
    int rc = std::system((std::string(REDPOLY_CLI_PATH) + " " + args + " > " + path).c_str());
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::vector<Polytope> random_hulls(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Polytope> out;
    for (int i = 0; i < count; ++i)
        out.push_back(random_sphere_polytope(rng, 8 + int(rng() % 13)));
    return out;
}

} // namespace

int main() {
    const fs::path tmp = fs::temp_directory_path() / "redpoly_acceptance";
    fs::create_directories(tmp);
    const std::string off_path = (tmp / "constructed.off").string();

    // 1. construct reproduces the reference parameters
    {
        bool pass = false;
        std::string detail;
        auto r = run_cli("construct --d1 1.1 --d2 1.003 --d3 1.004 --json -o " + off_path);
        if (r.exit_code != 0) {
            detail = "construct exited " + std::to_string(r.exit_code);
        } else {
            auto j = nlohmann::json::parse(r.out, nullptr, false);
            if (j.is_discarded()) {
                detail = "unparseable JSON";
            } else {
                const auto& p = j["outputs"]["params"];
                double residual = j["outputs"]["residual_max_norm"].get<double>();
                bool params_ok =
                    std::abs(p["x"].get<double>() - 0.6176490959800) <= 1e-10 &&
                    std::abs(p["s"].get<double>() - 0.1351384931026) <= 1e-10 &&
                    std::abs(p["h"].get<double>() - 0.0984300252409) <= 1e-10 &&
                    std::abs(p["r"].get<double>() - 0.3547183586709) <= 1e-10 &&
                    p["t"].get<double>() == 0.55;

                auto t0 = std::chrono::steady_clock::now();
                FamilyMember m = build_family_member(TargetDeltas{1.1, 1.003, 1.004});
                double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                  .count();
                pass = params_ok && residual <= 1e-12 && m.trace.converged && secs < 0.1;
                char buf[160];
                std::snprintf(buf, sizeof buf, "residual %.2e, solve+verify %.3fs", residual,
                              secs);
                detail = buf;
            }
        }
        report(1, pass, "construct converges to the reference parameters (residual <= 1e-12, "
                        "params to 1e-10, t = 0.55, under 0.1 s)", detail);
    }

    FamilyMember member = build_family_member(TargetDeltas{1.1, 1.003, 1.004});
    const Polytope& reference = member.polytope;

    // 2. width of the reconstructed polytope
    {
        double omega = minimum_width(reference).omega;
        report(2, std::abs(omega - 1.0) <= 1e-9, "minimum width of the reconstruction is 1.0",
               "omega = " + std::to_string(omega));
    }

    // 3. reducedness: all 12 marked, check exits 0
    {
        ReducednessReport r = is_reduced(reference);
        int marked = 0;
        for (const auto& s : r.vertex_status) marked += s.marked;
        auto cli = run_cli("check " + off_path);
        report(3, r.reduced && marked == 12 && cli.exit_code == 0,
               "all 12 vertices marked and `check` exits 0",
               std::to_string(marked) + " marked, exit " + std::to_string(cli.exit_code));
    }

    // 4. the two reference spare distances
    {
        bool pass = std::abs(member.rho_facet_v1v9v10_edge_v11v12 - 1.0433929735637) <= 1e-10 &&
                    std::abs(member.rho_edge_v5v9_edge_v8v12 - 1.0126888049628) <= 1e-10;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.13f and %.13f", member.rho_facet_v1v9v10_edge_v11v12,
                      member.rho_edge_v5v9_edge_v8v12);
        report(4, pass, "reference spare distances match to 1e-10", buf);
    }

    // 5. the five defining distances through the independent rho
    {
        auto v = vertices_from_params(member.params);
        auto dist = [](std::vector<Vec3> a, std::vector<Vec3> b) {
            return affine_hull_distance(a, b, 1e-9);
        };
        bool pass =
            std::abs(dist({v[0]}, {v[2], v[10], v[11], v[3]}) - 1.0) <= 1e-9 &&
            std::abs(dist({v[4]}, {v[1], v[7], v[11]}) - 1.0) <= 1e-9 &&
            std::abs(dist({v[0], v[1]}, {v[2], v[3]}) - 1.1) <= 1e-9 &&
            std::abs(dist({v[0], v[4]}, {v[3], v[7]}) - 1.003) <= 1e-9 &&
            std::abs(dist({v[0], v[8]}, {v[3], v[7]}) - 1.004) <= 1e-9;
        report(5, pass, "five defining distances hold to 1e-9 through rho");
    }

    // 6. the known non-reduced classes
    {
        bool cube = !is_reduced(make_cube()).reduced;
        bool tetra = !is_reduced(make_tetra()).reduced;
        bool prism = !is_reduced(make_prism()).reduced;
        bool pyramid = !is_reduced(make_square_pyramid()).reduced;
        report(6, cube && tetra && prism && pyramid,
               "cube, tetrahedron, prism and pyramid are all not reduced");
    }

    // 7 & 8 share their 50 random hulls
    auto hulls = random_hulls(50, 20260809);
    {
        bool pass = true;
        for (const Polytope& P : hulls)
            for (const auto& p : minimum_width(P).attaining_pairs)
                if (face_sum_dimension(P, p.face1, p.face2) != 2) pass = false;
        report(7, pass, "every width-attaining pair spans a plane (50 random hulls)");
    }
    {
        bool pass = true;
        double worst = 0.0;
        for (const Polytope& P : hulls) {
            double omega = minimum_width(P).omega;
            double sampled = sampled_min_width(P, 1000000);
            if (sampled < omega - 1e-12) pass = false; // a sampled direction beat "omega"
            worst = std::max(worst, sampled - omega);
        }
        pass = pass && worst <= 5e-3;
        char buf[64];
        std::snprintf(buf, sizeof buf, "largest gap %.2e", worst);
        report(8, pass, "1e6-direction sampling oracle agrees within 5e-3 on the same hulls",
               buf);
    }

    // 9. difference polytope doubles the width
    {
        bool pass = true;
        for (const Polytope& P : random_hulls(20, 31415926)) {
            double w1 = minimum_width(P).omega;
            double w2 = minimum_width(minkowski_difference(P)).omega;
            if (std::abs(w2 - 2.0 * w1) > 1e-8) pass = false;
        }
        report(9, pass, "difference polytope width is twice the width (20 random hulls)");
    }

    // 10. certificate soundness
    {
        bool pass = !scan_certificate(reference).has_value();
        for (const Polytope& P :
             {make_cube(), make_tetra(), make_prism(), make_square_pyramid()}) {
            if (auto cert = scan_certificate(P)) {
                if (is_reduced(P).reduced) pass = false; // soundness would be violated
            }
        }
        report(10, pass, "no certificate on the reconstruction; any found certificate implies "
                         "not reduced");
    }

    // 11. dual-number Jacobian against central differences
    {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> u(0.1, 1.0);
        const TargetDeltas d{1.1, 1.003, 1.004};
        bool pass = true;
        double worst = 0.0;
        int tested = 0;
        while (tested < 100) {
            std::array<double, 4> q{u(rng), u(rng), u(rng), u(rng)};
            if (std::abs(q[2] + q[3] - q[0]) < 0.02) continue; // prefactor pole
            auto Jd = jacobian(q, d);
            double scale = 1.0, err = 0.0;
            for (int j = 0; j < 4; ++j) {
                auto qp = q, qm = q;
                qp[j] += 1e-6;
                qm[j] -= 1e-6;
                auto fp = residual(qp, d), fm = residual(qm, d);
                for (int i = 0; i < 4; ++i) {
                    double fd = (fp[i] - fm[i]) / 2e-6;
                    scale = std::max(scale, std::abs(Jd[i][j]));
                    err = std::max(err, std::abs(Jd[i][j] - fd));
                }
            }
            worst = std::max(worst, err / scale);
            if (err / scale > 1e-5) pass = false;
            ++tested;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "largest relative deviation %.2e", worst);
        report(11, pass, "dual-number Jacobian matches central differences to 1e-5 "
                         "(100 random points)", buf);
    }

    // 12. family continuation on the +-0.01 grid
    {
        auto rows = sweep_family({1.09, 1.11, 3}, {0.993, 1.013, 3}, {0.994, 1.014, 3});
        int solved = 0, reduced = 0;
        for (const auto& row : rows) {
            solved += row.solved;
            reduced += row.reduced;
        }
        bool pass = solved == 27 && reduced == 27;
        report(12, pass, "3x3x3 grid at +-0.01 solves everywhere and stays reduced",
               std::to_string(solved) + "/27 solved, " + std::to_string(reduced) +
                   "/27 reduced");
    }

    // 13. rigid motions and scalings preserve the verdicts
    {
        std::mt19937_64 rng(777);
        bool pass = true;
        std::vector<std::pair<Polytope, bool>> fixtures;
        fixtures.emplace_back(reference, true);
        fixtures.emplace_back(make_cube(), false);
        fixtures.emplace_back(make_tetra(), false);
        fixtures.emplace_back(make_prism(), false);
        fixtures.emplace_back(make_square_pyramid(), false);
        for (const auto& [P, expect] : fixtures)
            for (int rep = 0; rep < 3; ++rep) {
                auto R = random_rotation(rng);
                double lambda = 0.2 + 5.0 * std::uniform_real_distribution<double>()(rng);
                Vec3 shift = random_unit(rng) * 2.0;
                if (is_reduced(transformed(P, R, lambda, shift)).reduced != expect) pass = false;
            }
        report(13, pass, "rotations, translations and scalings preserve all fixture verdicts");
    }

    std::printf("%d of 13 criteria passed\n", 13 - g_failures);
    return g_failures;
}
