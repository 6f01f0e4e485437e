#pragma once

// Command implementations behind the CLI. Each returns a process exit code:
//   0  success, all applicable checks passed
//   1  configuration or input error, nothing solved
//   2  solved but not certified (analytic checks failed; outputs are still
//      written with "certified": false)
//   3  verification failure (MC or identity gates)

#include <string>

#include "dynkin/config.hpp"

namespace dynkin::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;
inline constexpr int exit_uncertified = 2;
inline constexpr int exit_verify = 3;

// Writes <out_dir>/solution.json.
int cmd_solve(const RunConfig& cfg);

// Writes <out_dir>/value_table.csv with header x,V,G1,G2,region.
int cmd_value_table(const RunConfig& cfg);

// Writes <out_dir>/verify.json. The file is a pure function of the
// configuration: same config, same bytes.
int cmd_verify(const RunConfig& cfg);

}  // namespace dynkin::cli
