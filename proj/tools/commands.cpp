#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <utility>

#include "growdiff/critical.hpp"
#include "growdiff/eigensystem.hpp"
#include "growdiff/errors.hpp"
#include "growdiff/exact.hpp"
#include "growdiff/io.hpp"
#include "growdiff/motion.hpp"
#include "growdiff/numeric.hpp"

namespace growdiff::cli {

namespace {

constexpr double k_pi = 3.14159265358979323846;

// typed access to one config object; errors name the command and field
class Fields {
public:
    Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ConfigError(where_ + ": configuration must be a JSON object");
    }

    void allow(const std::vector<std::string>& keys) const { io::require_known_keys(j_, keys, where_); }
    bool has(const std::string& key) const { return j_.contains(key); }
    const json& raw(const std::string& key) const {
        if (!has(key)) throw ConfigError(where_ + ": missing field '" + key + "'");
        return j_.at(key);
    }

    double num(const std::string& key) const {
        const json& v = raw(key);
        if (!v.is_number() || !std::isfinite(v.get<double>()))
            throw ConfigError(where_ + ": field '" + key + "' must be a finite number");
        return v.get<double>();
    }
    double num(const std::string& key, double fallback) const { return has(key) ? num(key) : fallback; }

    int integer(const std::string& key, int fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_number_integer()) throw ConfigError(where_ + ": field '" + key + "' must be an integer");
        return v.get<int>();
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) throw ConfigError(where_ + ": field '" + key + "' must be true or false");
        return v.get<bool>();
    }

    std::string str(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(where_ + ": field '" + key + "' must be a string");
        return v.get<std::string>();
    }

    std::vector<double> nums(const std::string& key, std::vector<double> fallback) const {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(where_ + ": field '" + key + "' must be an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError(where_ + ": field '" + key + "' must be an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    Fields sub(const std::string& key) const { return has(key) ? Fields(raw(key), where_ + "." + key) : Fields(empty(), where_ + "." + key); }

    const std::string& where() const { return where_; }

private:
    static const json& empty() {
        static const json e = json::object();
        return e;
    }
    const json& j_;
    std::string where_;
};

io::MotionDocument load_motion(const Fields& f) {
    json doc = f.raw("motion");
    if (doc.is_string()) doc = io::read_json_file(doc.get<std::string>());
    if (!doc.is_object()) throw ConfigError(f.where() + ": field 'motion' must be an object or a file path");
    if (f.has("physics")) {
        const json& ph = f.raw("physics");
        if (!ph.is_object()) throw ConfigError(f.where() + ": field 'physics' must be an object");
        if (!doc.contains("physics") || !doc["physics"].is_object()) doc["physics"] = json::object();
        for (const auto& [k, v] : ph.items()) doc["physics"][k] = v;
    }
    return io::motion_from_json(doc);
}

// initial data on [0, L0] vanishing at both ends
std::function<double(double)> interval_initial(const Fields& f, double L0) {
    const Fields s = f.sub("initial");
    s.allow({"type", "mode", "amplitude"});
    const std::string type = s.str("type", "sine");
    const double amp = s.num("amplitude", 1.0);
    if (type == "sine") {
        const int mode = s.integer("mode", 1);
        if (mode < 1) throw ConfigError(s.where() + ": mode must be at least 1");
        return [=](double xi) { return amp * std::sin(mode * k_pi * xi / L0); };
    }
    if (type == "parabola") return [=](double xi) { return amp * 4.0 * xi * (L0 - xi) / (L0 * L0); };
    throw ConfigError(s.where() + ": unknown initial type '" + type + "' (sine, parabola)");
}

// radial initial data on [0, R0] vanishing at R0
std::function<double(double)> radial_initial(const Fields& f, int n_dim, double R0) {
    const Fields s = f.sub("initial");
    s.allow({"type", "amplitude"});
    const std::string type = s.str("type", "principal");
    const double amp = s.num("amplitude", 1.0);
    if (type == "principal") {
        return [=](double r) {
            const double rho = r / R0;
            switch (n_dim) {
                case 1: return amp * std::cos(0.5 * k_pi * rho);
                case 2: return amp * std::cyl_bessel_j(0.0, 2.40482555769577276862 * rho);
                default: return rho == 0.0 ? amp : amp * std::sin(k_pi * rho) / (k_pi * rho);
            }
        };
    }
    if (type == "parabola") return [=](double r) { return amp * (1.0 - r * r / (R0 * R0)); };
    throw ConfigError(s.where() + ": unknown initial type '" + type + "' (principal, parabola)");
}

std::vector<double> output_times(const Fields& f) {
    std::vector<double> times = f.nums("times", {});
    if (times.empty()) times.push_back(f.num("T"));
    for (double t : times)
        if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError(f.where() + ": times must be finite and >= 0");
    return times;
}

std::string out_prefix(const Fields& f, const std::string& fallback) { return f.str("out", fallback); }

void write_manifest(const std::string& path, const std::string& command, json body) {
    io::write_text_file(path, io::make_manifest(command, std::move(body)).dump(2) + "\n");
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

std::vector<std::vector<double>> read_csv(const std::string& path, std::vector<std::string>* header) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("'" + path + "' is empty");
    *header = split_csv(line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> r;
        for (const auto& c : split_csv(line)) {
            try {
                r.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw ConfigError("'" + path + "' holds a non-numeric cell '" + c + "'");
            }
        }
        if (r.size() != header->size()) throw ConfigError("'" + path + "' has a ragged row");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name, const std::string& path) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ConfigError("'" + path + "' has no column '" + name + "'");
}

struct CompareRow {
    double t = 0.0;
    double max_abs = 0.0;
    double max_exact = 0.0;
    double worst_xi = 0.0;
    double rel() const { return max_exact > 0.0 ? max_abs / max_exact : max_abs; }
};

int finish_compare(const std::vector<CompareRow>& table, double tol, const std::string& out, json extra) {
    std::ostringstream csv;
    csv << "t,max_abs_error,max_abs_exact,rel_linf,worst_xi\n";
    double worst = 0.0, worst_t = 0.0, worst_xi = 0.0;
    std::printf("%-24s %-24s %-24s\n", "t", "rel_linf", "worst_xi");
    for (const auto& r : table) {
        csv << io::fmt(r.t) << ',' << io::fmt(r.max_abs) << ',' << io::fmt(r.max_exact) << ',' << io::fmt(r.rel())
            << ',' << io::fmt(r.worst_xi) << '\n';
        std::printf("%-24s %-24s %-24s\n", io::fmt(r.t).c_str(), io::fmt(r.rel()).c_str(), io::fmt(r.worst_xi).c_str());
        if (r.rel() > worst || table.size() == 1) {
            worst = r.rel();
            worst_t = r.t;
            worst_xi = r.worst_xi;
        }
    }
    const bool pass = worst <= tol;
    io::write_text_file(out + ".csv", csv.str());
    extra["tol"] = tol;
    extra["max_rel_linf"] = worst;
    extra["worst"] = {{"t", worst_t}, {"xi", worst_xi}};
    extra["pass"] = pass;
    extra["outputs"] = {{"table", out + ".csv"}};
    write_manifest(out + ".json", "compare", std::move(extra));
    if (!pass) {
        std::fprintf(stderr, "tolerance breach: relative error %s > %s at xi = %s, t = %s\n", io::fmt(worst).c_str(),
                     io::fmt(tol).c_str(), io::fmt(worst_xi).c_str(), io::fmt(worst_t).c_str());
        return ToleranceBreach;
    }
    return Ok;
}

}  // namespace

int cmd_eigen(const json& cfg) {
    const Fields f(cfg, "eigen");
    f.allow({"D", "L0", "R0", "gamma0", "gamma1", "grid", "modes", "geometry", "n_dim", "out"});
    const std::string geometry = f.str("geometry", "interval");
    const double D = f.num("D", 1.0);
    const double gamma0 = f.num("gamma0", 0.0);
    const int grid = f.integer("grid", 1024);
    const int modes = f.integer("modes", 8);
    EigenSystem es;
    try {
        if (geometry == "interval") {
            if (f.has("R0") || f.has("n_dim")) throw ConfigError("eigen: R0 and n_dim apply to geometry 'ball' only");
            es = solve_sl(D, f.num("L0"), gamma0, f.num("gamma1", 0.0), grid, modes);
        } else if (geometry == "ball") {
            if (f.has("L0") || f.has("gamma1")) throw ConfigError("eigen: use R0 (no gamma1) for geometry 'ball'");
            es = solve_radial(D, f.num("R0"), gamma0, f.integer("n_dim", 3), grid, modes);
        } else {
            throw ConfigError("eigen: geometry must be 'interval' or 'ball'");
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("eigen: ") + e.what());
    }
    const std::string out = out_prefix(f, "eigen");
    io::write_text_file(out + ".csv", io::eigen_csv(es));
    json body = io::eigen_header(es);
    body["config"] = cfg;
    body["outputs"] = {{"modes", out + ".csv"}};
    write_manifest(out + ".json", "eigen", std::move(body));
    for (std::size_t n = 0; n < es.num_modes(); ++n)
        std::printf("sigma_%zu = %s\n", n + 1, io::fmt(es.sigma[n]).c_str());
    return Ok;
}

int cmd_exact(const json& cfg) {
    const Fields f(cfg, "exact");
    f.allow({"motion", "physics", "initial", "grid", "modes", "points", "T", "times", "out"});
    const auto doc = load_motion(f);
    const BoundaryMotion& m = doc.motion;
    if (m.family() != Family::Separable) throw ConfigError("exact: motion must be separable");
    const double L0 = m.L0();
    const int grid = f.integer("grid", 2048);
    const int modes = f.integer("modes", 64);
    const int points = f.integer("points", 257);
    if (points < 2) throw ConfigError("exact: points must be at least 2");
    const auto times = output_times(f);
    const auto init = interval_initial(f, L0);

    SeriesSolution sol;
    try {
        const EigenSystem es = eigen_for_motion(m, doc.physics, grid, modes);
        sol = build_series(m, doc.physics, sample_on_grid(init, es.nodes), es);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("exact: ") + e.what());
    }
    const auto nodes = uniform_nodes(L0, points - 1);
    std::vector<io::FieldRow> rows;
    bool warned = false;
    for (double t : times) {
        const TimeFactors tf = sol.time_factors(t);
        for (double xi : nodes) {
            const FieldValue fv = sol.eval(xi, tf);
            warned = warned || fv.truncation_warning;
            rows.push_back({tf.A + xi * tf.L / L0, xi, t, fv.value, fv.value, sol.w(xi, t)});
        }
    }
    if (warned) std::fprintf(stderr, "exact: last retained mode exceeds 1e-8 of the sum; consider more modes\n");

    const std::string out = out_prefix(f, "exact");
    io::write_text_file(out + ".csv", io::field_csv(rows));
    json body;
    body["config"] = cfg;
    body["motion"] = io::motion_to_json(m, doc.physics);
    body["case"] = case_name(m.tag().kind);
    body["horizon"] = std::isfinite(m.horizon()) ? json(m.horizon()) : json("inf");
    body["truncation"] = modes;
    body["grid"] = grid;
    body["points"] = points;
    body["sigmas"] = sol.eigen.sigma;
    body["times"] = times;
    body["truncation_warning"] = warned;
    try {
        const GrowthReport g = growth_region(m, doc.physics);
        body["growth"] = {{"verdict", verdict_name(g.verdict)}, {"xi_lo", g.xi_lo}, {"xi_hi", g.xi_hi}};
    } catch (const Error&) {
    }
    body["outputs"] = {{"field", out + ".csv"}};
    write_manifest(out + ".json", "exact", std::move(body));
    std::printf("exact: %s, %zu rows written to %s.csv\n", case_name(m.tag().kind), rows.size(), out.c_str());
    return Ok;
}

int cmd_numeric(const json& cfg) {
    const Fields f(cfg, "numeric");
    f.allow({"motion", "physics", "initial", "field", "n_dim", "grid", "dt", "dt_rel", "T", "times", "out"});
    const auto doc = load_motion(f);
    const BoundaryMotion& m = doc.motion;
    const std::string field = f.str("field", "u");
    const int grid = f.integer("grid", 512);
    const StepControl step{f.num("dt", 1e-4), f.num("dt_rel", 0.0)};
    const auto times = output_times(f);
    double T = f.has("T") ? f.num("T") : 0.0;
    for (double t : times) T = std::max(T, t);

    GridSolution gs;
    try {
        if (field == "u" || field == "w") {
            const auto nodes = uniform_nodes(m.L0(), grid);
            const auto u0 = sample_on_grid(interval_initial(f, m.L0()), nodes);
            gs = field == "u" ? solve_u(m, doc.physics, u0, grid, step, T, times)
                              : solve_w(m, doc.physics, transform_ic(u0, nodes, m, doc.physics), grid, step, T, times);
        } else if (field == "radial") {
            const int n = f.integer("n_dim", 3);
            const double R0 = 0.5 * m.L0();
            const auto nodes = uniform_nodes(R0, grid);
            const auto psi0 = radial_initial(f, n, R0);
            std::vector<double> W0(nodes.size());
            for (std::size_t i = 0; i < nodes.size(); ++i)
                W0[i] = psi0(nodes[i]) * std::exp(-ball_log_W_to_psi(m, doc.physics, n, nodes[i], 0.0));
            gs = solve_radial(m, doc.physics, W0, n, grid, step, T, times);
        } else {
            throw ConfigError("numeric: field must be 'u', 'w' or 'radial'");
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("numeric: ") + e.what());
    }
    const std::string out = out_prefix(f, "numeric");
    io::write_text_file(out + ".csv", io::grid_csv(gs));
    json body;
    body["config"] = cfg;
    const json mj = io::motion_to_json(m, doc.physics);
    body["motion"] = mj;
    body["motion_hash"] = io::content_hash(mj);
    body["scheme"] = io::scheme_json(gs);
    body["outputs"] = {{"field", out + ".csv"}};
    write_manifest(out + ".json", "numeric", std::move(body));
    std::printf("numeric: %s field, %ld steps, %zu output times written to %s.csv\n", field_name(gs.field),
                gs.scheme.steps, gs.times.size(), out.c_str());
    return Ok;
}

int cmd_compare(const json& cfg) {
    const Fields f(cfg, "compare");
    if (f.has("exact_manifest") || f.has("numeric_manifest")) {
        f.allow({"exact_manifest", "numeric_manifest", "tol", "out"});
        const double tol = f.num("tol", 1e-4);
        const json em = io::read_json_file(f.str("exact_manifest", ""));
        const json nm = io::read_json_file(f.str("numeric_manifest", ""));
        if (em.value("command", "") != "exact" || nm.value("command", "") != "numeric")
            throw ConfigError("compare: expected an exact and a numeric run manifest");
        if (em.value("schema_version", 0) != io::schema_version || nm.value("schema_version", 0) != io::schema_version)
            throw ConfigError("compare: manifest schema_version mismatch");
        if (io::content_hash(em.at("motion")) != nm.value("motion_hash", ""))
            throw ConfigError("compare: the runs use different motions");
        const std::string fieldname = nm.at("scheme").value("field", "u");
        if (fieldname != "u" && fieldname != "w") throw ConfigError("compare: radial runs have no exact counterpart here");

        std::vector<std::string> eh, nh;
        const std::string epath = em.at("outputs").at("field").get<std::string>();
        const std::string npath = nm.at("outputs").at("field").get<std::string>();
        const auto erows = read_csv(epath, &eh);
        const auto nrows = read_csv(npath, &nh);
        const std::size_t et = column(eh, "t", epath), ex = column(eh, "xi", epath), ev = column(eh, fieldname, epath);
        const std::size_t nt = column(nh, "t", npath), nx = column(nh, "xi", npath), nv = column(nh, "value", npath);
        std::map<std::pair<double, double>, double> exact;
        for (const auto& r : erows) exact[{r[et], r[ex]}] = r[ev];
        std::map<double, CompareRow> table;
        for (const auto& r : nrows) {
            auto it = exact.find({r[nt], r[nx]});
            if (it == exact.end())
                throw ConfigError("compare: exact run has no sample at t = " + io::fmt(r[nt]) + ", xi = " + io::fmt(r[nx]) +
                                  " (use points = grid + 1 and the same times)");
            CompareRow& row = table[r[nt]];
            row.t = r[nt];
            const double err = std::abs(it->second - r[nv]);
            if (err > row.max_abs) {
                row.max_abs = err;
                row.worst_xi = r[nx];
            }
            row.max_exact = std::max(row.max_exact, std::abs(it->second));
        }
        std::vector<CompareRow> rows;
        for (const auto& [t, row] : table) rows.push_back(row);
        json extra;
        extra["config"] = cfg;
        extra["field"] = fieldname;
        return finish_compare(rows, tol, out_prefix(f, "compare"), std::move(extra));
    }

    f.allow({"motion", "physics", "initial", "exact", "numeric", "T", "times", "tol", "out"});
    const double tol = f.num("tol", 1e-4);
    const auto doc = load_motion(f);
    const BoundaryMotion& m = doc.motion;
    if (m.family() != Family::Separable) throw ConfigError("compare: motion must be separable");
    const Fields fe = f.sub("exact"), fn = f.sub("numeric");
    fe.allow({"grid", "modes"});
    fn.allow({"grid", "dt", "dt_rel"});
    const auto times = output_times(f);
    double T = f.has("T") ? f.num("T") : 0.0;
    for (double t : times) T = std::max(T, t);
    const auto init = interval_initial(f, m.L0());
    const int ngrid = fn.integer("grid", 512);
    SeriesSolution sol;
    GridSolution gs;
    try {
        const EigenSystem es = eigen_for_motion(m, doc.physics, fe.integer("grid", 2048), fe.integer("modes", 64));
        sol = build_series(m, doc.physics, sample_on_grid(init, es.nodes), es);
        const auto nodes = uniform_nodes(m.L0(), ngrid);
        gs = solve_u(m, doc.physics, sample_on_grid(init, nodes), ngrid,
                     StepControl{fn.num("dt", 1e-4), fn.num("dt_rel", 0.0)}, T, times);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("compare: ") + e.what());
    }
    std::vector<CompareRow> rows;
    for (std::size_t k = 0; k < gs.times.size(); ++k) {
        CompareRow row;
        row.t = gs.times[k];
        const TimeFactors tf = sol.time_factors(row.t);
        for (std::size_t i = 0; i < gs.nodes.size(); ++i) {
            const double e = sol.eval(gs.nodes[i], tf).value;
            const double err = std::abs(e - gs.values[k][i]);
            if (err > row.max_abs) {
                row.max_abs = err;
                row.worst_xi = gs.nodes[i];
            }
            row.max_exact = std::max(row.max_exact, std::abs(e));
        }
        rows.push_back(row);
    }
    json extra;
    extra["config"] = cfg;
    extra["field"] = "u";
    extra["motion"] = io::motion_to_json(m, doc.physics);
    extra["scheme"] = io::scheme_json(gs);
    return finish_compare(rows, tol, out_prefix(f, "compare"), std::move(extra));
}

int cmd_critical(const json& cfg) {
    const Fields f(cfg, "critical");
    f.allow({"physics", "alpha", "theta", "L0_offset", "eta", "n_dim", "grid", "dt", "dt_rel", "T", "t_first",
             "outputs_per_decade", "probes", "window", "gradient_window", "tol", "envelope", "out"});
    const Fields fp = f.sub("physics");
    fp.allow({"D", "f0"});
    PhysicsParams phys;
    try {
        phys = PhysicsParams::make(fp.num("D", 1.0), fp.num("f0", 400.0));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("critical.physics: ") + e.what());
    }
    if (f.has("alpha") == f.has("theta")) throw ConfigError("critical: give exactly one of 'alpha' and 'theta'");
    CriticalParams cp;
    cp.alpha = f.has("alpha") ? f.num("alpha") : f.num("theta") * phys.D / phys.c_star();
    cp.L0_offset = f.num("L0_offset", 1.0);
    if (f.has("eta")) {
        const Fields fe = f.sub("eta");
        fe.allow({"eta0", "k", "p"});
        cp.eta.eta0 = fe.num("eta0", 0.0);
        cp.eta.k = fe.num("k", 0.0);
        cp.eta.p = fe.num("p", -1.0);
    }
    const int n_dim = f.integer("n_dim", 1);
    CriticalRunOptions run;
    run.grid_size = f.integer("grid", 1024);
    run.step = StepControl{f.num("dt", 1e-4), f.num("dt_rel", 1e-3)};
    run.T = f.num("T", 1e3);
    run.t_first = f.num("t_first", 1.0);
    run.outputs_per_decade = f.integer("outputs_per_decade", 20);
    const auto probes = f.nums("probes", {0.5, 1.0, 2.0});
    const auto window = f.nums("window", {std::pow(10.0, 1.5), run.T});
    const auto gwin = f.nums("gradient_window", {0.1 * run.T, run.T});
    if (window.size() != 2 || gwin.size() != 2) throw ConfigError("critical: windows must be [t_lo, t_hi]");
    if (window[1] > run.T * (1.0 + 1e-12) || gwin[1] > run.T * (1.0 + 1e-12))
        throw ConfigError("critical: windows must end at or before T");
    const double tol = f.num("tol", 0.05);
    const bool want_env = f.boolean("envelope", true);

    BoundaryMotion m;
    GridSolution w;
    CriticalFitReport rep;
    GradientBand band;
    try {
        m = BoundaryMotion::critical(cp, phys);
        if (n_dim < 1 || n_dim > 3) throw ConfigError("critical: n_dim must be 1, 2 or 3");
        w = run_critical(m, phys, n_dim, run);
        rep = fit_exponent_from(m, phys, w, probes, window[0], window[1]);
        band = gradient_band(m, phys, w, gwin[0], gwin[1]);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("critical: ") + e.what());
    }

    const std::string out = out_prefix(f, "critical");
    json body;
    body["config"] = cfg;
    body["motion"] = io::motion_to_json(m, phys);
    body["scheme"] = io::scheme_json(w);
    body["scheme"].erase("times");
    body["report"] = io::fit_report_json(rep);
    body["gradient_band"] = {{"t_window", {band.t_lo, band.t_hi}}, {"min", band.g_min}, {"max", band.g_max},
                             {"ratio", band.ratio()}};
    bool violated = false;
    if (want_env) {
        EnvelopeOptions eo;
        eo.throw_on_violation = false;
        json ej;
        try {
            if (!(cp.alpha > 0.0)) throw HypothesisViolated("alpha <= 0 gives P < 0");
            const EnvelopePair env = verify_envelope(m, phys, w, eo);
            io::write_text_file(out + "_envelope.csv", io::envelope_csv(env));
            ej = {{"onset", env.onset}, {"t_cal", env.t_cal}, {"C1", env.C1}, {"C2", env.C2},
                  {"worst_slack", env.worst_slack}, {"worst", {{"xi", env.worst_xi}, {"t", env.worst_t}}},
                  {"ok", env.ok(eo.tol)}, {"csv", out + "_envelope.csv"}};
            violated = !env.ok(eo.tol);
            if (violated)
                std::fprintf(stderr, "envelope violation: slack %s at xi = %s, t = %s\n", io::fmt(env.worst_slack).c_str(),
                             io::fmt(env.worst_xi).c_str(), io::fmt(env.worst_t).c_str());
        } catch (const HypothesisViolated& e) {
            ej = {{"skipped", e.what()}};
        }
        body["envelope"] = ej;
    }
    const double dev = rep.fitted_exponent - rep.predicted_exponent;
    body["tol"] = tol;
    body["pass"] = std::abs(dev) <= tol && !violated;
    write_manifest(out + ".json", "critical", std::move(body));
    std::printf("critical: n_dim = %d, alpha = %s, predicted = %s, fitted = %s, deviation = %s\n", n_dim,
                io::fmt(cp.alpha).c_str(), io::fmt(rep.predicted_exponent).c_str(),
                io::fmt(rep.fitted_exponent).c_str(), io::fmt(dev).c_str());
    if (violated) return NumericFailure;
    if (std::abs(dev) > tol) {
        std::fprintf(stderr, "tolerance breach: |fitted - predicted| = %s > %s\n", io::fmt(std::abs(dev)).c_str(),
                     io::fmt(tol).c_str());
        return ToleranceBreach;
    }
    return Ok;
}

}  // namespace growdiff::cli
