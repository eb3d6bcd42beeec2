#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specshare/analytic.hpp"
#include "specshare/circumradius.hpp"

namespace specshare
{

double watts_to_dbm(double watts);
double dbm_to_watts(double dbm);

/// Shortest decimal text that round-trips the double ('.' decimal point,
/// no locale). Infinity prints as "inf".
std::string format_number(double v);

struct ResultRow
{
  std::string model;
  double lambda_bs_per_km2 = 0.0;
  double r_exc_km = 0.0;
  double mean_dbm = 0.0;
  double error_db = 0.0;  // 10 log10(1 + error / mean)
  double elevation_parameter = 0.0;
  std::optional<double> eta;
  double wall_time_s = 0.0;
};

/// Row for one model result; error is the quadrature bound or MC half-width.
ResultRow make_row(std::string model, double intensity_m2, double r_exc_m, double mean_watts, double error_watts,
                   double h_bs_m);

/// Comma separated, header first, LF line endings. The timing column goes to
/// write_timings_csv so this table is byte-identical across runs.
void write_results_csv(std::ostream& os, std::span<const ResultRow> rows);
void write_timings_csv(std::ostream& os, std::span<const ResultRow> rows);

struct EtaRow
{
  double elevation_parameter = 0.0;
  double eta = 0.0;
};

/// eta_ratio for each scenario, sorted by elevation parameter.
std::vector<EtaRow> eta_table(std::span<const NetworkScenario> scenarios, const CircumradiusOptions& options = {});

/// CSV text of eta_table with header "elevation_parameter,eta".
std::string emit_eta_table(std::span<const NetworkScenario> scenarios, const CircumradiusOptions& options = {});
void write_eta_csv(std::ostream& os, std::span<const EtaRow> rows);

/// Interference (dBm) against exclusion radius (km), one polyline per
/// (model, intensity) with a legend. Self-contained SVG 1.1.
void write_sweep_svg(std::ostream& os, std::span<const ResultRow> rows, const std::string& title);

}  // namespace specshare
