#include "specshare/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "specshare/errors.hpp"
#include "specshare/montecarlo.hpp"
#include "specshare/parallel.hpp"
#include "specshare/results.hpp"

namespace specshare
{
namespace
{

constexpr Model all_models[] = {Model::cbc, Model::cbc_approx, Model::aaecc, Model::aaecc_approx,
                                Model::monte_carlo};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Cell
{
  std::optional<ResultRow> row;
  std::string failure;
  bool numerical = false;
};

void write_file(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out)
    throw std::runtime_error("write failed for " + path.string());
}

bool wants(const std::vector<Model>& models, Model m)
{
  return std::find(models.begin(), models.end(), m) != models.end();
}

}  // namespace

std::vector<Model> parse_model_list(const std::string& list)
{
  std::vector<Model> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty())
      continue;
    const auto m = parse_model(item);
    if (!m)
      throw ConfigError("unknown model '" + item + "' (expected cbc, cbc-approx, aaecc, aaecc-approx, monte-carlo)");
    if (!wants(out, *m))
      out.push_back(*m);
  }
  if (out.empty())
    throw ConfigError("empty model list");
  return out;
}

int run_config(const std::string& path, const RunOptions& options, std::ostream& log)
{
  try
  {
    return run_config(load_config(path), options, log);
  }
  catch (const ConfigError& e)
  {
    log << "config error: " << e.what() << '\n';
    return exit_config;
  }
}

int run_config(const ScenarioConfig& config_in, const RunOptions& options, std::ostream& log)
{
  ScenarioConfig config = config_in;
  std::vector<Model> models(std::begin(all_models), std::end(all_models));
  try
  {
    if (options.seed)
      config.simulation.master_seed = *options.seed;
    if (options.out_dir)
      config.output.directory = *options.out_dir;
    validate(config);
    if (options.models)
      models = *options.models;
    if (options.no_mc)
      models.erase(std::remove(models.begin(), models.end(), Model::monte_carlo), models.end());
    if (models.empty())
      throw ConfigError("no models left to run");
    const bool approx = wants(models, Model::cbc_approx) || wants(models, Model::aaecc_approx);
    if (approx && !(config.scenario(1e-6, config.network.r_exc_km.front() * 1e3).alpha() > 2.0))
      throw ConfigError("pathloss.alpha: the far-field approximations need alpha > 2");
    if (wants(models, Model::monte_carlo) && std::isinf(config.network.r_net_km))
      throw ConfigError("network.r_net_km: the Monte Carlo model needs a finite network");
    if (!(options.tol > 0.0 && options.tol < 1.0))
      throw ConfigError("tolerance must be in (0, 1)");
  }
  catch (const ConfigError& e)
  {
    log << "config error: " << e.what() << '\n';
    return exit_config;
  }
  catch (const std::invalid_argument& e)
  {
    log << "config error: " << e.what() << '\n';
    return exit_config;
  }

  try
  {
    const auto& lambdas_km2 = config.network.lambda_bs_per_km2;
    const auto& r_exc_km = config.network.r_exc_km;
    const auto copts = config.circumradius_options();
    const double h_bs = config.bs.height_m;
    const std::size_t n_l = lambdas_km2.size(), n_r = r_exc_km.size();

    // cells[(l * n_r + r) * 5 + model]
    std::vector<Cell> cells(n_l * n_r * std::size(all_models));
    auto cell = [&](std::size_t l, std::size_t r, Model m) -> Cell& {
      return cells[(l * n_r + r) * std::size(all_models) + static_cast<std::size_t>(m)];
    };

    // analytic models, one task per sweep point
    parallel_for(n_l * n_r, [&](std::size_t idx) {
      const std::size_t l = idx / n_r, r = idx % n_r;
      const double lambda = lambdas_km2[l] * 1e-6;
      const double r_exc = r_exc_km[r] * 1e3;
      const NetworkScenario s = config.scenario(lambda, r_exc);
      const CircumradiusDistribution dist(lambda, copts);
      std::optional<double> cbc_w, aaecc_w;
      for (Model m : {Model::cbc, Model::cbc_approx, Model::aaecc, Model::aaecc_approx})
      {
        if (!wants(models, m))
          continue;
        Cell& c = cell(l, r, m);
        const auto t0 = Clock::now();
        try
        {
          InterferenceResult res;
          switch (m)
          {
          case Model::cbc:
            res = interference_cbc(s, dist, options.tol);
            cbc_w = res.mean_watts;
            break;
          case Model::cbc_approx:
            res = interference_cbc_approx(s, dist);
            break;
          case Model::aaecc:
            res = interference_aaecc(s, options.tol);
            aaecc_w = res.mean_watts;
            break;
          default:
            res = interference_aaecc_approx(s);
            break;
          }
          ResultRow row = make_row(std::string(to_string(m)), lambda, r_exc, res.mean_watts, res.error_estimate, h_bs);
          row.lambda_bs_per_km2 = lambdas_km2[l];
          row.r_exc_km = r_exc_km[r];
          if (m == Model::cbc_approx)
            row.eta = eta_ratio(s, dist);
          row.wall_time_s = seconds_since(t0);
          c.row = row;
        }
        catch (const ConvergenceError& e)
        {
          c.failure = e.what();
          c.numerical = true;
        }
      }
      if (cbc_w && aaecc_w && cell(l, r, Model::cbc).row)
        cell(l, r, Model::cbc).row->eta = *cbc_w / *aaecc_w;
    });

    // Monte Carlo, thinned across exclusion radii for each intensity
    if (wants(models, Model::monte_carlo))
    {
      SimulationPlan plan;
      plan.scenario = config.scenario(lambdas_km2.front() * 1e-6, r_exc_km.front() * 1e3);
      plan.n_realizations = config.simulation.n_realizations;
      plan.master_seed = config.simulation.master_seed;
      plan.circumradius_mode = config.mode();
      std::vector<double> r_m, l_m;
      for (double r : r_exc_km)
        r_m.push_back(r * 1e3);
      for (double l : lambdas_km2)
        l_m.push_back(l * 1e-6);
      const auto t0 = Clock::now();
      const auto pts = sweep(plan, r_m, l_m);
      const double elapsed = seconds_since(t0) / static_cast<double>(pts.size());
      for (std::size_t idx = 0; idx < pts.size(); ++idx)
      {
        const std::size_t l = idx / n_r, r = idx % n_r;
        const auto& e = pts[idx].estimate;
        Cell& c = cell(l, r, Model::monte_carlo);
        if (!(e.mean_watts > 0.0) || !std::isfinite(e.mean_watts))
        {
          c.failure = "no finite positive interference in any realization";
          c.numerical = true;
          continue;
        }
        ResultRow row = make_row("monte-carlo", l_m[l], r_m[r], e.mean_watts, 1.96 * e.std_error_watts, h_bs);
        row.lambda_bs_per_km2 = lambdas_km2[l];
        row.r_exc_km = r_exc_km[r];
        row.wall_time_s = elapsed;
        c.row = row;
        if (e.boundary_fraction > 0.0)
          log << "monte-carlo lambda=" << format_number(lambdas_km2[l]) << " r_exc=" << format_number(r_exc_km[r])
              << " km: boundary fallback for " << std::fixed << std::setprecision(2) << 100.0 * e.boundary_fraction
              << std::defaultfloat << "% of transmitters\n";
      }
    }

    // eta table at the configured elevation parameters, reported as given
    std::vector<EtaRow> eta_rows;
    for (double x : config.eta.elevation_parameters)
    {
      const double lambda = x * x / (pi * h_bs * h_bs);
      const NetworkScenario s = config.scenario(lambda, r_exc_km.front() * 1e3);
      eta_rows.push_back({x, eta_ratio(s, CircumradiusDistribution(lambda, copts))});
    }
    std::stable_sort(eta_rows.begin(), eta_rows.end(), [](const EtaRow& a, const EtaRow& b) {
      return a.elevation_parameter < b.elevation_parameter;
    });

    std::vector<ResultRow> rows;
    std::ostringstream failures;
    bool numerical = false, any_failure = false;
    for (std::size_t l = 0; l < n_l; ++l)
      for (std::size_t r = 0; r < n_r; ++r)
        for (Model m : all_models)
        {
          if (!wants(models, m))
            continue;
          const Cell& c = cell(l, r, m);
          if (c.row)
          {
            rows.push_back(*c.row);
            continue;
          }
          any_failure = true;
          numerical = numerical || c.numerical;
          failures << to_string(m) << ",lambda_bs_per_km2=" << format_number(lambdas_km2[l])
                   << ",r_exc_km=" << format_number(r_exc_km[r]) << ": " << c.failure << '\n';
        }

    const std::filesystem::path dir(config.output.directory);
    std::filesystem::create_directories(dir);
    std::ostringstream csv, timings, eta, svg;
    write_results_csv(csv, rows);
    write_timings_csv(timings, rows);
    write_eta_csv(eta, eta_rows);
    if (config.wants("csv"))
    {
      write_file(dir / "results.csv", csv.str());
      write_file(dir / "timings.csv", timings.str());
      write_file(dir / "eta_table.csv", eta.str());
    }
    if (config.wants("svg"))
    {
      write_sweep_svg(svg, rows, "Mean interference at the radar");
      write_file(dir / "fig3.svg", svg.str());
    }
    const auto failure_log = dir / "failures.log";
    if (any_failure)
    {
      write_file(failure_log, failures.str());
      log << "some sweep points failed; see " << failure_log.string() << '\n';
      return numerical ? exit_numerical : exit_failure;
    }
    std::filesystem::remove(failure_log);
    log << "wrote " << rows.size() << " rows to " << dir.string() << '\n';
    return exit_ok;
  }
  catch (const ConvergenceError& e)
  {
    log << "numerical error: " << e.what() << '\n';
    return exit_numerical;
  }
  catch (const ConfigError& e)
  {
    log << "config error: " << e.what() << '\n';
    return exit_config;
  }
  catch (const std::exception& e)
  {
    log << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

}  // namespace specshare
