// specshare: sweep the interference models from a JSON scenario, or dump a
// sample Voronoi tessellation for inspection.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "specshare/point_pattern.hpp"
#include "specshare/runner.hpp"
#include "specshare/tessellation.hpp"

int main(int argc, char** argv)
{
  CLI::App app{"Mean radar interference from a downlink cellular network"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a configured sweep and write CSV/SVG results");
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> models;
  double tol = 1e-4;
  bool no_mc = false;
  run->add_option("config", config_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output.directory)");
  run->add_option("--seed", seed, "Master seed (overrides simulation.master_seed)");
  run->add_option("--models", models, "Comma-separated subset of cbc,cbc-approx,aaecc,aaecc-approx,monte-carlo");
  run->add_option("--tol", tol, "Relative quadrature tolerance")->check(CLI::Range(1e-12, 0.5));
  run->add_flag("--no-mc", no_mc, "Skip the Monte Carlo model");

  auto* tess = app.add_subcommand("tessellate", "Write the finite Voronoi edges of one Poisson sample");
  double lambda_km2 = 1.0;
  double radius_km = 5.0;
  std::uint64_t tess_seed = 1;
  std::string edges_path;
  tess->add_option("--lambda", lambda_km2, "BS intensity (per km^2)")->check(CLI::PositiveNumber);
  tess->add_option("--radius", radius_km, "Disk radius (km)")->check(CLI::PositiveNumber);
  tess->add_option("--seed", tess_seed, "Sample seed");
  tess->add_option("--out", edges_path, "Edge file")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run)
  {
    specshare::RunOptions opts;
    opts.out_dir = out_dir;
    opts.seed = seed;
    opts.no_mc = no_mc;
    opts.tol = tol;
    if (models)
    {
      try
      {
        opts.models = specshare::parse_model_list(*models);
      }
      catch (const specshare::ConfigError& e)
      {
        std::cerr << "config error: " << e.what() << '\n';
        return specshare::exit_config;
      }
    }
    return specshare::run_config(config_path, opts, std::cerr);
  }

  try
  {
    const auto pattern = specshare::sample_ppp(lambda_km2 * 1e-6, {0.0, radius_km * 1e3}, tess_seed);
    const auto t = specshare::build_tessellation(pattern);
    std::ofstream out(edges_path);
    if (!out)
    {
      std::cerr << "cannot write " << edges_path << '\n';
      return specshare::exit_failure;
    }
    specshare::write_voronoi_edges(out, t);
    std::cerr << "wrote " << pattern.points.size() << " cells to " << edges_path << '\n';
  }
  catch (const std::invalid_argument& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return specshare::exit_config;
  }
  return specshare::exit_ok;
}
