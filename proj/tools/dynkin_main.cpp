// Command line front end: solve a perpetual two-player stopping game with
// threshold equilibria, tabulate its value function, or run the Monte Carlo
// verification battery. Configuration comes from an INI file or a named
// preset, with a few flag overrides on top.

#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dynkin/commands.hpp"
#include "dynkin/config.hpp"

namespace {

using dynkin::cli::RunConfig;

struct CommonArgs {
    std::string config_file;
    std::string preset;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> paths;
};

struct TableArgs {
    std::optional<double> xmin;
    std::optional<double> xmax;
    std::optional<int> points;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("config", args.config_file,
                    "INI configuration file (mutually exclusive with --preset)")
        ->check(CLI::ExistingFile);
    std::string presets;
    for (const auto& name : dynkin::cli::preset_names()) {
        if (!presets.empty()) presets += ", ";
        presets += name;
    }
    cmd->add_option("--preset", args.preset,
                    "built-in configuration: " + presets);
    cmd->add_option("--out", args.out_dir, "output directory (default .)");
    cmd->add_option("--seed", args.seed, "Monte Carlo master seed");
    cmd->add_option("--paths", args.paths, "Monte Carlo path count")
        ->check(CLI::PositiveNumber);
}

RunConfig load_config(const CommonArgs& args) {
    if (args.config_file.empty() == args.preset.empty())
        throw std::runtime_error(
            "exactly one of a config file or --preset is required");
    RunConfig cfg;
    if (!args.preset.empty()) {
        cfg = dynkin::cli::preset(args.preset);
    } else {
        std::ifstream in(args.config_file);
        if (!in)
            throw std::runtime_error("cannot read " + args.config_file);
        std::ostringstream text;
        text << in.rdbuf();
        cfg = dynkin::cli::parse_config(text.str());
    }
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.seed) cfg.sim.seed = *args.seed;
    if (args.paths) cfg.sim.paths = *args.paths;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Threshold equilibria of perpetual stopping games driven by "
        "spectrally two-sided processes"};
    app.require_subcommand(1);

    CommonArgs solve_args, table_args_common, verify_args;
    TableArgs table_args;

    auto* solve = app.add_subcommand(
        "solve", "solve for thresholds and value function, write solution.json");
    add_common(solve, solve_args);

    auto* table = app.add_subcommand(
        "value-table", "tabulate V and the payoffs, write value_table.csv");
    add_common(table, table_args_common);
    table->add_option("--xmin", table_args.xmin, "table lower end");
    table->add_option("--xmax", table_args.xmax, "table upper end");
    table->add_option("--points", table_args.points, "table size")
        ->check(CLI::Range(2, 1000000));

    auto* verify = app.add_subcommand(
        "verify", "run the Monte Carlo verification battery, write verify.json");
    add_common(verify, verify_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return dynkin::cli::exit_config;
    }

    try {
        if (solve->parsed()) return dynkin::cli::cmd_solve(load_config(solve_args));
        if (table->parsed()) {
            RunConfig cfg = load_config(table_args_common);
            if (table_args.xmin) cfg.table.xmin = *table_args.xmin;
            if (table_args.xmax) cfg.table.xmax = *table_args.xmax;
            if (table_args.points) cfg.table.points = *table_args.points;
            if (!(cfg.table.xmin < cfg.table.xmax))
                throw std::runtime_error("xmin must be below xmax");
            return dynkin::cli::cmd_value_table(cfg);
        }
        return dynkin::cli::cmd_verify(load_config(verify_args));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return dynkin::cli::exit_config;
    }
}
