#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "growdiff/errors.hpp"
#include "growdiff/io.hpp"

using growdiff::cli::json;

namespace {

// a flag whose value, when given, overrides the config entry at path
struct Override {
    CLI::Option* opt = nullptr;
    std::function<void(json&)> apply;
};

json& at_path(json& root, const std::vector<std::string>& path) {
    json* node = &root;
    for (const auto& key : path) {
        if (!node->is_object()) *node = json::object();
        node = &(*node)[key];
    }
    return *node;
}

struct Command {
    CLI::App* app = nullptr;
    std::string config_path;
    std::vector<Override> overrides;
    std::function<int(const json&)> run;

    template <class T>
    void flag(const std::string& name, std::vector<std::string> path, const std::string& help) {
        auto value = std::make_shared<T>();
        Override o;
        o.opt = app->add_option(name, *value, help);
        o.apply = [value, path](json& cfg) { at_path(cfg, path) = *value; };
        overrides.push_back(std::move(o));
    }

    void motion_flag() {
        auto value = std::make_shared<std::string>();
        Override o;
        o.opt = app->add_option("--motion", *value, "motion JSON file");
        o.apply = [value](json& cfg) { cfg["motion"] = *value; };
        overrides.push_back(std::move(o));
    }

    json config() const {
        json cfg = config_path.empty() ? json::object() : growdiff::io::read_json_file(config_path);
        if (!cfg.is_object()) throw growdiff::ConfigError("configuration file must hold a JSON object");
        // motion paths in a config file are relative to that file
        if (cfg.contains("motion") && cfg["motion"].is_string()) {
            const std::filesystem::path mp = cfg["motion"].get<std::string>();
            if (mp.is_relative()) cfg["motion"] = (std::filesystem::path(config_path).parent_path() / mp).string();
        }
        for (const auto& o : overrides)
            if (o.opt->count() > 0) o.apply(cfg);
        return cfg;
    }
};

Command& add_command(CLI::App& root, std::vector<Command>& cmds, const std::string& name, const std::string& help,
                     std::function<int(const json&)> run) {
    cmds.emplace_back();
    Command& c = cmds.back();
    c.app = root.add_subcommand(name, help);
    c.app->add_option("--config", c.config_path, "JSON configuration; flags override its entries");
    c.run = std::move(run);
    c.flag<std::string>("--out", {"out"}, "output path prefix");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App root{"growdiff: growth-diffusion on moving intervals and balls"};
    root.require_subcommand(1);
    std::vector<Command> cmds;
    cmds.reserve(5);

    Command& eigen = add_command(root, cmds, "eigen", "Sturm-Liouville modes of the fixed domain", growdiff::cli::cmd_eigen);
    eigen.flag<double>("--D", {"D"}, "diffusivity");
    eigen.flag<double>("--L0", {"L0"}, "interval length");
    eigen.flag<double>("--R0", {"R0"}, "ball radius");
    eigen.flag<double>("--gamma0", {"gamma0"}, "Lddot L^3");
    eigen.flag<double>("--gamma1", {"gamma1"}, "Addot L^3");
    eigen.flag<int>("--grid", {"grid"}, "number of cells");
    eigen.flag<int>("--modes", {"modes"}, "number of modes");
    eigen.flag<std::string>("--geometry", {"geometry"}, "interval or ball");
    eigen.flag<int>("--n-dim", {"n_dim"}, "ball dimension");

    Command& exact = add_command(root, cmds, "exact", "eigenfunction series solution", growdiff::cli::cmd_exact);
    exact.motion_flag();
    exact.flag<double>("--D", {"physics", "D"}, "diffusivity (overrides the motion document)");
    exact.flag<double>("--f0", {"physics", "f0"}, "growth rate (overrides the motion document)");
    exact.flag<int>("--grid", {"grid"}, "eigen grid cells");
    exact.flag<int>("--modes", {"modes"}, "retained modes");
    exact.flag<int>("--points", {"points"}, "output points in xi");
    exact.flag<double>("--T", {"T"}, "output time when --times is absent");
    exact.flag<std::vector<double>>("--times", {"times"}, "output times");

    Command& numeric = add_command(root, cmds, "numeric", "Crank-Nicolson solution on the fixed domain",
                                   growdiff::cli::cmd_numeric);
    numeric.motion_flag();
    numeric.flag<double>("--D", {"physics", "D"}, "diffusivity (overrides the motion document)");
    numeric.flag<double>("--f0", {"physics", "f0"}, "growth rate (overrides the motion document)");
    numeric.flag<std::string>("--field", {"field"}, "u, w or radial");
    numeric.flag<int>("--n-dim", {"n_dim"}, "ball dimension for the radial field");
    numeric.flag<int>("--grid", {"grid"}, "grid cells");
    numeric.flag<double>("--dt", {"dt"}, "time step");
    numeric.flag<double>("--dt-rel", {"dt_rel"}, "relative step growth");
    numeric.flag<double>("--T", {"T"}, "final time");
    numeric.flag<std::vector<double>>("--times", {"times"}, "output times");

    Command& compare = add_command(root, cmds, "compare", "exact against numeric, relative L-infinity per output time",
                                   growdiff::cli::cmd_compare);
    compare.flag<std::string>("--exact-manifest", {"exact_manifest"}, "manifest of an exact run");
    compare.flag<std::string>("--numeric-manifest", {"numeric_manifest"}, "manifest of a numeric run");
    compare.motion_flag();
    compare.flag<double>("--tol", {"tol"}, "relative tolerance");
    compare.flag<int>("--grid", {"numeric", "grid"}, "numeric grid cells");
    compare.flag<double>("--dt", {"numeric", "dt"}, "numeric time step");
    compare.flag<int>("--modes", {"exact", "modes"}, "retained modes");
    compare.flag<double>("--T", {"T"}, "final time");
    compare.flag<std::vector<double>>("--times", {"times"}, "output times");

    Command& critical = add_command(root, cmds, "critical", "boundary-layer exponent and envelope for critical motions",
                                    growdiff::cli::cmd_critical);
    critical.flag<double>("--D", {"physics", "D"}, "diffusivity");
    critical.flag<double>("--f0", {"physics", "f0"}, "growth rate");
    critical.flag<double>("--alpha", {"alpha"}, "log-correction coefficient");
    critical.flag<double>("--theta", {"theta"}, "alpha c*/D");
    critical.flag<double>("--L0-offset", {"L0_offset"}, "initial length (ball: diameter)");
    critical.flag<int>("--n-dim", {"n_dim"}, "1 for the interval, 2 or 3 for a ball");
    critical.flag<int>("--grid", {"grid"}, "grid cells");
    critical.flag<double>("--dt-rel", {"dt_rel"}, "relative step growth");
    critical.flag<double>("--T", {"T"}, "final time");
    critical.flag<double>("--tol", {"tol"}, "exponent tolerance");
    critical.flag<bool>("--envelope", {"envelope"}, "verify the sub/supersolution envelope");

    try {
        root.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = root.exit(e);
        return code == 0 ? 0 : growdiff::cli::ConfigFailure;
    }

    for (const auto& c : cmds) {
        if (!c.app->parsed()) continue;
        try {
            return c.run(c.config());
        } catch (const growdiff::ConfigError& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return growdiff::cli::ConfigFailure;
        } catch (const growdiff::InvalidArgument& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return growdiff::cli::ConfigFailure;
        } catch (const growdiff::DomainCollapsed& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return growdiff::cli::ConfigFailure;
        } catch (const growdiff::Error& e) {
            std::fprintf(stderr, "numerical failure: %s\n", e.what());
            return growdiff::cli::NumericFailure;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return growdiff::cli::NumericFailure;
        }
    }
    return growdiff::cli::ConfigFailure;
}
