#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specshare/analytic.hpp"
#include "specshare/config.hpp"

namespace specshare
{

enum ExitCode : int
{
  exit_ok = 0,
  exit_failure = 1,
  exit_config = 2,
  exit_numerical = 3,
};

struct RunOptions
{
  std::optional<std::string> out_dir;          // overrides output.directory
  std::optional<std::uint64_t> seed;           // overrides simulation.master_seed
  std::optional<std::vector<Model>> models;    // default: all five
  bool no_mc = false;
  double tol = 1e-4;                           // relative quadrature tolerance
};

/// Parses a comma-separated model list; throws ConfigError on unknown names.
std::vector<Model> parse_model_list(const std::string& list);

/// Runs the sweep and writes results.csv, timings.csv, eta_table.csv and
/// optionally fig3.svg into the output directory. Sweep points that fail to
/// converge are written to failures.log instead of the table. Returns the
/// process exit code; messages go to `log`.
int run_config(const std::string& path, const RunOptions& options, std::ostream& log);
int run_config(const ScenarioConfig& config, const RunOptions& options, std::ostream& log);

}  // namespace specshare
