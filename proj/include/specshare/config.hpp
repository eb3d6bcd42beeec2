#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "specshare/analytic.hpp"
#include "specshare/circumradius.hpp"
#include "specshare/montecarlo.hpp"

namespace specshare
{

/// Schema violation in a scenario config; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Scenario document. Degrees and kilometers here, radians and meters in
/// the library. Every field has a default, so "{}" is the reference setup.
struct ScenarioConfig
{
  double fc_ghz = 5.0;

  struct Radar
  {
    int n_az = 40;
    int n_el = 40;
    double height_m = 20.0;
    double scan_az_deg = 60.0;
    double scan_el_deg = -10.0;
  } radar;

  struct Bs
  {
    int n_az = 10;
    int n_el = 10;
    double height_m = 50.0;
  } bs;

  struct Network
  {
    std::vector<double> lambda_bs_per_km2{0.01, 0.1, 1.0};
    std::vector<double> r_exc_km{5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    double r_net_km = 100.0;  // may be +infinity ("inf" in the document)
  } network;

  struct Downlink
  {
    int k_users = 4;
    double p_bs_watts = 1.0;
  } downlink;

  struct Pathloss
  {
    std::string variant = "uma-los";  // or "reference"
    double alpha = 4.0;
    double pl_r0_db = 0.0;  // loss at 1 m, reference variant only
  } pathloss;

  struct Distribution
  {
    int k_max = 8;
    int simplex_samples = 200'000;
  } distribution;

  struct Simulation
  {
    int n_realizations = 200;
    std::uint64_t master_seed = 1;
    std::string circumradius_mode = "true-voronoi";
  } simulation;

  struct Eta
  {
    std::vector<double> elevation_parameters{0.0089, 0.0198, 0.028, 0.044, 0.0886, 0.1253};
  } eta;

  struct Output
  {
    std::string directory = "results";
    std::vector<std::string> formats{"csv", "svg"};
  } output;

  /// Scenario for one sweep point; intensity in m^-2, radius in meters.
  [[nodiscard]] NetworkScenario scenario(double intensity_m2, double r_exc_m) const;
  [[nodiscard]] CircumradiusOptions circumradius_options() const;
  [[nodiscard]] CircumradiusMode mode() const;
  [[nodiscard]] bool wants(const std::string& format) const;
};

/// Parses and validates; throws ConfigError naming the offending key.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

/// Cross-field checks (also run by parse_config).
void validate(const ScenarioConfig& c);

}  // namespace specshare
