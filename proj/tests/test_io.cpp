#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "growdiff/errors.hpp"
#include "growdiff/io.hpp"
#include "support.hpp"

using namespace growdiff;
using growdiff::io::json;

namespace {

void check_round_trip(const BoundaryMotion& m, const PhysicsParams& phys) {
    const json j = io::motion_to_json(m, phys);
    const json back = json::parse(j.dump());
    const auto doc = io::motion_from_json(back);
    CHECK(io::motion_to_json(doc.motion, doc.physics) == j);
    CHECK(doc.physics.D == phys.D);
    CHECK(doc.physics.f0 == phys.f0);
    CHECK(doc.motion.family() == m.family());
    const double T = std::isfinite(m.horizon()) ? 0.5 * m.horizon() : 3.0;
    for (double t : {0.0, 0.37 * T, T}) {
        const auto a = m.kinematics(t), b = doc.motion.kinematics(t);
        CHECK(a.L == b.L);
        CHECK(a.A == b.A);
        CHECK(a.Ldot == b.Ldot);
        CHECK(a.Addot == b.Addot);
        CHECK(m.s(t) == doc.motion.s(t));
    }
}

}  // namespace

TEST_CASE("round-trip decimal formatting") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 3.141592653589793, 0.0, -0.0, 1e-320}) {
        const std::string s = io::fmt(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(io::fmt(0.5) == "0.5");
    CHECK(io::fmt(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("content hash") {
    CHECK(io::fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(io::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(io::hash_hex(0x1234) == "0000000000001234");
    const json a = {{"x", 1}, {"y", {1, 2, 3}}};
    const json b = {{"y", {1, 2, 3}}, {"x", 1}};
    CHECK(io::content_hash(a) == io::content_hash(b));
    CHECK(io::content_hash(a) != io::content_hash(json{{"x", 2}, {"y", {1, 2, 3}}}));
    const json man = io::make_manifest("exact", a);
    CHECK(man["schema_version"] == io::schema_version);
    CHECK(man["command"] == "exact");
    CHECK(man["hash"].get<std::string>().size() == 16);
    CHECK(io::make_manifest("exact", a)["hash"] == man["hash"]);
    CHECK(io::make_manifest("eigen", a)["hash"] != man["hash"]);
}

TEST_CASE("motion documents round trip bit-stably") {
    const auto phys = PhysicsParams::make(0.7, 1.0 / 3.0);
    for (const auto& [name, p] : growdiff::testing::family_params_full()) {
        CAPTURE(name);
        check_round_trip(BoundaryMotion::separable(p), phys);
    }
    CriticalParams cp;
    cp.alpha = 0.123456789;
    cp.eta = {0.1, -0.3, -0.7};
    cp.L0_offset = 1.1;
    check_round_trip(BoundaryMotion::critical(cp, phys), phys);
    check_round_trip(growdiff::testing::perturbed_motion(1.0, 0.25, 2.0), phys);
}

TEST_CASE("motion documents are validated") {
    const json good = {{"family", "separable"},
                      {"params", {{"L0", 1.0}, {"a", 0.5}}},
                      {"physics", {{"D", 1.0}, {"f0", 1.0}}}};
    CHECK_NOTHROW(io::motion_from_json(good));
    auto bad = good;
    bad["speed"] = 2.0;
    CHECK_THROWS_AS(io::motion_from_json(bad), ConfigError);
    try {
        io::motion_from_json(bad);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("speed") != std::string::npos);
    }
    bad = good;
    bad["params"].erase("L0");
    CHECK_THROWS_AS(io::motion_from_json(bad), ConfigError);
    bad = good;
    bad["params"]["speed"] = 2.0;
    CHECK_THROWS_AS(io::motion_from_json(bad), ConfigError);
    bad = good;
    bad["family"] = "spiral";
    CHECK_THROWS_AS(io::motion_from_json(bad), ConfigError);
    bad = good;
    bad["params"]["L0"] = "one";
    CHECK_THROWS_AS(io::motion_from_json(bad), ConfigError);
    bad = good;
    bad["physics"]["D"] = -1.0;
    CHECK_THROWS_AS(io::motion_from_json(bad), Error);
    CHECK_THROWS_AS(io::read_json_file("/nonexistent/motion.json"), ConfigError);
}

TEST_CASE("csv writers") {
    const auto es = solve_sl(1.0, 1.0, 0.0, 0.0, 64, 3);
    const std::string csv = io::eigen_csv(es);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "xi,g_1,g_2,g_3");
    int lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    CHECK(lines == 65);
    const json h = io::eigen_header(es);
    CHECK(h["sigmas"].size() == 3);
    CHECK(h["grid_size"] == 64);

    std::vector<io::FieldRow> rows{{0.1, 0.2, 0.3, 0.4, 0.5, 0.6}};
    CHECK(io::field_csv(rows) == "x,xi,t,psi,u,w\n0.10000000000000001,0.20000000000000001,0.29999999999999999,"
                                 "0.40000000000000002,0.5,0.59999999999999998\n");
}
