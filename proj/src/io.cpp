#include "growdiff/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "growdiff/errors.hpp"

namespace growdiff::io {

namespace {

double number(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
    if (!it->is_number()) throw ConfigError(where + ": field '" + key + "' must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw ConfigError(where + ": field '" + key + "' must be finite");
    return v;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::vector<double> number_array(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
    if (!it->is_array()) throw ConfigError(where + ": field '" + key + "' must be an array");
    std::vector<double> v;
    for (const auto& e : *it) {
        if (!e.is_number()) throw ConfigError(where + ": field '" + key + "' must hold numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

const json& object(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
    if (!it->is_object()) throw ConfigError(where + ": field '" + key + "' must be an object");
    return *it;
}

}  // namespace

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string content_hash(const json& j) { return hash_hex(fnv1a(j.dump())); }

void require_known_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == it.key();
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

json physics_to_json(const PhysicsParams& p) { return {{"D", p.D}, {"f0", p.f0}}; }

PhysicsParams physics_from_json(const json& j) {
    require_known_keys(j, {"D", "f0"}, "physics");
    try {
        return PhysicsParams::make(number(j, "D", "physics"), number(j, "f0", "physics"));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("physics: ") + e.what());
    }
}

json motion_to_json(const BoundaryMotion& m, const PhysicsParams& phys) {
    json j;
    switch (m.family()) {
        case Family::Separable: {
            const auto& p = m.separable_params();
            j["family"] = "separable";
            j["params"] = {{"a", p.a}, {"b", p.b}, {"L0", p.L0}, {"gamma1", p.gamma1}, {"c", p.c}, {"d", p.d}};
            break;
        }
        case Family::Critical: {
            const auto& p = m.critical_params();
            j["family"] = "critical";
            j["params"] = {{"alpha", p.alpha},
                           {"L0_offset", p.L0_offset},
                           {"eta", {{"eta0", p.eta.eta0}, {"k", p.eta.k}, {"p", p.eta.p}}}};
            break;
        }
        case Family::Tabulated: {
            const auto& p = m.tabulated_params();
            j["family"] = "tabulated";
            j["params"] = {{"t", p.t},       {"A", p.A}, {"Adot", p.Adot}, {"Addot", p.Addot},
                           {"L", p.L},       {"Ldot", p.Ldot}, {"Lddot", p.Lddot}};
            break;
        }
    }
    j["physics"] = physics_to_json(phys);
    return j;
}

MotionDocument motion_from_json(const json& j) {
    require_known_keys(j, {"family", "params", "physics"}, "motion");
    if (!j.contains("family") || !j["family"].is_string()) throw ConfigError("motion: missing field 'family'");
    const std::string family = j["family"].get<std::string>();
    const PhysicsParams phys = physics_from_json(object(j, "physics", "motion"));
    const json& p = object(j, "params", "motion");
    try {
        if (family == "separable") {
            require_known_keys(p, {"a", "b", "L0", "gamma1", "c", "d"}, "motion.params");
            SeparableParams s;
            s.a = number_or(p, "a", 0.0, "motion.params");
            s.b = number_or(p, "b", 0.0, "motion.params");
            s.L0 = number(p, "L0", "motion.params");
            s.gamma1 = number_or(p, "gamma1", 0.0, "motion.params");
            s.c = number_or(p, "c", 0.0, "motion.params");
            s.d = number_or(p, "d", 0.0, "motion.params");
            return {BoundaryMotion::separable(s), phys};
        }
        if (family == "critical") {
            require_known_keys(p, {"alpha", "L0_offset", "eta"}, "motion.params");
            CriticalParams c;
            c.alpha = number(p, "alpha", "motion.params");
            c.L0_offset = number_or(p, "L0_offset", 1.0, "motion.params");
            if (p.contains("eta")) {
                const json& e = object(p, "eta", "motion.params");
                require_known_keys(e, {"eta0", "k", "p"}, "motion.params.eta");
                c.eta.eta0 = number_or(e, "eta0", 0.0, "motion.params.eta");
                c.eta.k = number_or(e, "k", 0.0, "motion.params.eta");
                c.eta.p = number_or(e, "p", -1.0, "motion.params.eta");
            }
            return {BoundaryMotion::critical(c, phys), phys};
        }
        if (family == "tabulated") {
            require_known_keys(p, {"t", "A", "Adot", "Addot", "L", "Ldot", "Lddot"}, "motion.params");
            TabulatedParams t;
            t.t = number_array(p, "t", "motion.params");
            t.A = number_array(p, "A", "motion.params");
            t.Adot = number_array(p, "Adot", "motion.params");
            t.Addot = number_array(p, "Addot", "motion.params");
            t.L = number_array(p, "L", "motion.params");
            t.Ldot = number_array(p, "Ldot", "motion.params");
            t.Lddot = number_array(p, "Lddot", "motion.params");
            return {BoundaryMotion::tabulated(t), phys};
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("motion: ") + e.what());
    }
    throw ConfigError("motion: unknown family '" + family + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

std::string eigen_csv(const EigenSystem& es) {
    std::ostringstream os;
    os << (es.params.geometry == Geometry::Ball ? "r" : "xi");
    for (std::size_t n = 0; n < es.num_modes(); ++n) os << ",g_" << n + 1;
    os << '\n';
    for (std::size_t i = 0; i < es.nodes.size(); ++i) {
        os << fmt(es.nodes[i]);
        for (std::size_t n = 0; n < es.num_modes(); ++n) os << ',' << fmt(es.modes[n][i]);
        os << '\n';
    }
    return os.str();
}

json eigen_header(const EigenSystem& es) {
    json p;
    if (es.params.geometry == Geometry::Ball) {
        p = {{"geometry", "ball"}, {"D", es.params.D}, {"R0", es.params.L0}, {"gamma0", es.params.gamma0},
             {"n_dim", es.params.n_dim}};
    } else {
        p = {{"geometry", "interval"}, {"D", es.params.D}, {"L0", es.params.L0}, {"gamma0", es.params.gamma0},
             {"gamma1", es.params.gamma1}};
    }
    return {{"params", p}, {"grid_size", es.grid_size}, {"sigmas", es.sigma}};
}

std::string grid_csv(const GridSolution& gs) {
    std::ostringstream os;
    os << "t," << (gs.field == FieldKind::RadialW ? "r" : "xi") << ",value\n";
    for (std::size_t k = 0; k < gs.times.size(); ++k)
        for (std::size_t i = 0; i < gs.nodes.size(); ++i)
            os << fmt(gs.times[k]) << ',' << fmt(gs.nodes[i]) << ',' << fmt(gs.values[k][i]) << '\n';
    return os.str();
}

json scheme_json(const GridSolution& gs) {
    return {{"field", field_name(gs.field)},   {"n_dim", gs.n_dim},
            {"theta", gs.scheme.theta},        {"dt", gs.scheme.dt},
            {"dt_rel", gs.scheme.dt_rel},      {"grid_size", gs.scheme.grid_size},
            {"steps", gs.scheme.steps},        {"times", gs.times}};
}

std::string field_csv(const std::vector<FieldRow>& rows) {
    std::ostringstream os;
    os << "x,xi,t,psi,u,w\n";
    for (const auto& r : rows)
        os << fmt(r.x) << ',' << fmt(r.xi) << ',' << fmt(r.t) << ',' << fmt(r.psi) << ',' << fmt(r.u) << ','
           << fmt(r.w) << '\n';
    return os.str();
}

std::string envelope_csv(const EnvelopePair& env) {
    std::ostringstream os;
    os << "t,xi,sub,w,super,slack\n";
    for (const auto& r : env.rows)
        os << fmt(r.t) << ',' << fmt(r.xi) << ',' << fmt(r.sub) << ',' << fmt(r.w) << ',' << fmt(r.super) << ','
           << fmt(r.slack) << '\n';
    return os.str();
}

json fit_report_json(const CriticalFitReport& rep) {
    return {{"alpha", rep.alpha},
            {"n_dim", rep.n_dim},
            {"c_star", rep.c_star},
            {"predicted_exponent", rep.predicted_exponent},
            {"fitted_exponent", rep.fitted_exponent},
            {"t_window", {rep.t_lo, rep.t_hi}},
            {"residual", rep.residual},
            {"y_probes", rep.y_probes},
            {"probe_slopes", rep.probe_slopes},
            {"experimental", rep.experimental}};
}

json make_manifest(const std::string& command, json body) {
    body["schema_version"] = schema_version;
    body["command"] = command;
    const std::string h = content_hash(body);
    body["hash"] = h;
    return body;
}

}  // namespace growdiff::io
