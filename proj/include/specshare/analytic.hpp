#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specshare/array.hpp"
#include "specshare/channel.hpp"
#include "specshare/circumradius.hpp"

namespace specshare
{

/// Deployment around a typical radar at the origin.
struct NetworkScenario
{
  ArrayGeometry bs_array{10, 10, 50.0};
  ArrayGeometry radar_array{40, 40, 20.0};
  BeamDirection radar_scan = BeamDirection::from_degrees(60.0, -10.0);
  DownlinkConfig dl{};
  PathlossModel pathloss = PathlossModel::uma_los(5.0, 50.0, 20.0);
  double intensity_bs = 1e-7;  // per m^2 (0.1 per km^2)
  double r_exc_m = 5e3;
  double r_net_m = 1e5;        // +infinity for an unbounded network

  /// 40x40 radar at 20 m scanning (60 deg, -10 deg), 10x10 BSs at 50 m,
  /// 5 GHz UMa LoS pathloss, K = 4, P_BS = 1 W, 100 km network.
  static NetworkScenario reference();

  /// Throws std::invalid_argument when inconsistent.
  void validate() const;

  /// Radius of the circle with the mean cell area, 1 / sqrt(pi lambda).
  [[nodiscard]] double average_area_radius() const;
  /// h_BS sqrt(pi lambda), the dimensionless elevation parameter.
  [[nodiscard]] double elevation_parameter() const;
  [[nodiscard]] double alpha() const { return pathloss.exponent(); }
};

/// Minimum user elevation seen from a BS of height h in a cell of radius r_c.
double min_elevation(double h_bs_m, double r_c);

enum class Model
{
  cbc,
  cbc_approx,
  aaecc,
  aaecc_approx,
  monte_carlo,
};

std::string_view to_string(Model m);
std::optional<Model> parse_model(std::string_view s);

struct InterferenceResult
{
  Model model = Model::cbc;
  double mean_watts = 0.0;
  double error_estimate = 0.0;  // quadrature error bound or MC half-width, watts
  // parameter echo and cost
  double intensity_bs = 0.0;
  double r_exc_m = 0.0;
  double r_net_m = 0.0;
  std::size_t evaluations = 0;
  std::string radius_law;
};

/// Law of the cell radius entering the elevation bound: the analytic
/// circumradius density, a point mass, or an empirical sample (plug-in mean).
class RadiusLaw
{
public:
  static RadiusLaw analytic(const CircumradiusDistribution& d);
  static RadiusLaw point_mass(double r_c);
  static RadiusLaw empirical(std::vector<double> samples);

  [[nodiscard]] std::string name() const;

  /// E[G_max(phi, atan(h_BS / R))] for the BS array.
  [[nodiscard]] double expected_gain_bound(const ArrayGeometry& bs, double phi, double rel_tol,
                                           std::size_t* evaluations = nullptr) const;

private:
  enum class Kind
  {
    analytic,
    point_mass,
    empirical
  };
  Kind kind_ = Kind::point_mass;
  std::optional<CircumradiusDistribution> dist_;
  double radius_ = 0.0;
  std::shared_ptr<const std::vector<double>> samples_;
};

/// Integral of the radar gain over the BS azimuth half-plane at fixed
/// elevation: int_{-pi/2}^{pi/2} G_rad(theta, phi) d theta. Panels break at
/// the azimuth-pattern nulls.
double radar_azimuth_integral(const ArrayGeometry& radar, const BeamDirection& scan, double phi, double rel_tol = 1e-10,
                              std::size_t* evaluations = nullptr);

/// Worst-case mean interference with the circumcircle cell model.
InterferenceResult interference_cbc(const NetworkScenario& s, const CircumradiusDistribution& d, double tol = 1e-4);
InterferenceResult interference_cbc(const NetworkScenario& s, const RadiusLaw& law, double tol = 1e-4);

/// Far-field closed form: flat elevation, d ~ r, integrated to infinity.
InterferenceResult interference_cbc_approx(const NetworkScenario& s, const CircumradiusDistribution& d);
InterferenceResult interference_cbc_approx(const NetworkScenario& s, const RadiusLaw& law);

/// Nominal mean interference with every cell of radius 1 / sqrt(pi lambda).
InterferenceResult interference_aaecc(const NetworkScenario& s, double tol = 1e-4);
InterferenceResult interference_aaecc_approx(const NetworkScenario& s);

/// E[G_max(0, phi_m(R_c))] / G_max(0, phi_m(r_a)).
double eta_ratio(const NetworkScenario& s, const CircumradiusDistribution& d);

/// Exclusion radius at which the far-field worst-case interference equals
/// the threshold.
double solve_exclusion_radius(const NetworkScenario& s, const CircumradiusDistribution& d, double threshold_watts);

}  // namespace specshare
