#pragma once

// Run configuration for the command-line tool: INI-style sections with a
// canonical serialization. parse(serialize(c)) reproduces c exactly.

#include <string>
#include <vector>

#include "dynkin/game.hpp"
#include "dynkin/mc.hpp"

namespace dynkin::cli {

struct TableConfig {
    double xmin = -4.5;
    double xmax = 4.5;
    int points = 181;

    bool operator==(const TableConfig&) const = default;
};

struct RunConfig {
    game::Spec spec;
    game::SolveOptions solve;
    mc::SimConfig sim;
    std::vector<double> offsets = {0.25, -0.25, 0.5, -0.5};
    TableConfig table;
    std::string out_dir = ".";

    bool operator==(const RunConfig&) const = default;
};

inline bool operator==(const game::SolveOptions& a, const game::SolveOptions& b) {
    return a.tolerance == b.tolerance && a.grid_size == b.grid_size;
}
inline bool operator==(const mc::SimConfig& a, const mc::SimConfig& b) {
    return a.paths == b.paths && a.seed == b.seed && a.dt == b.dt &&
           a.horizon_cap == b.horizon_cap;
}

// Named parameter sets from the worked examples; all use r = 1, delta = 1.
//   bm-sym    driftless Brownian motion, sigma = 1
//   bm-drift  Brownian motion, c = 1, sigma = 1
//   cl        Cramer-Lundberg, c = 1, lambda1 = 1, alpha1 = 1
//   cp-sym    compound Poisson, all parameters 1
//   cp-asym   compound Poisson, alpha1 = 1, lambda1 = 3, alpha2 = 3, lambda2 = 1
std::vector<std::string> preset_names();
RunConfig preset(const std::string& name);  // throws on unknown name

// Parses INI text: sections [model], [game], [solve], [mc], [table],
// [output]; '#' and ';' start comments. Unknown sections or keys, values of
// the wrong shape, and parameters that do not belong to the chosen family
// all throw std::invalid_argument with a line-numbered message.
RunConfig parse_config(const std::string& text);

// Canonical form: fixed section and key order, numbers at 17 significant
// digits, family-specific keys only.
std::string serialize_config(const RunConfig& c);

// 17-significant-digit shortest form used by both the config writer and the
// CSV table.
std::string format_double(double v);

}  // namespace dynkin::cli
