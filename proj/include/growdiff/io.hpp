#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "growdiff/critical.hpp"
#include "growdiff/eigensystem.hpp"
#include "growdiff/exact.hpp"
#include "growdiff/motion.hpp"
#include "growdiff/numeric.hpp"
#include "growdiff/physics.hpp"

namespace growdiff::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

// shortest form with 17 significant digits
std::string fmt(double v);

std::uint64_t fnv1a(std::string_view data);
std::string hash_hex(std::uint64_t h);
// hash of the canonical (sorted-key, compact) dump
std::string content_hash(const json& j);

json physics_to_json(const PhysicsParams& p);
PhysicsParams physics_from_json(const json& j);

struct MotionDocument {
    BoundaryMotion motion;
    PhysicsParams physics;
};

json motion_to_json(const BoundaryMotion& m, const PhysicsParams& phys);
// throws ConfigError on malformed documents or unknown keys
MotionDocument motion_from_json(const json& j);

// keys of obj outside allowed raise ConfigError naming the first offender
void require_known_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& where);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// columns: xi, g_1 ... g_k
std::string eigen_csv(const EigenSystem& es);
json eigen_header(const EigenSystem& es);

// long format: t, xi, value
std::string grid_csv(const GridSolution& gs);
json scheme_json(const GridSolution& gs);

struct FieldRow {
    double x = 0.0, xi = 0.0, t = 0.0;
    double psi = 0.0, u = 0.0, w = 0.0;
};
// columns: x, xi, t, psi, u, w
std::string field_csv(const std::vector<FieldRow>& rows);

// columns: t, xi, sub, w, super, slack
std::string envelope_csv(const EnvelopePair& env);

json fit_report_json(const CriticalFitReport& rep);

// schema_version, command, content hash of body (computed before the hash key is inserted)
json make_manifest(const std::string& command, json body);

}  // namespace growdiff::io
