#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "specshare/analytic.hpp"

namespace specshare
{

/// Where each transmitting BS gets its cell radius.
enum class CircumradiusMode
{
  true_voronoi,        // circumradius of its own cell in the sampled tessellation
  iid_analytic,        // independent draw from the circumradius law
  fixed_average_area,  // every cell has radius 1 / sqrt(pi lambda)
};

std::string_view to_string(CircumradiusMode m);
std::optional<CircumradiusMode> parse_circumradius_mode(std::string_view s);

/// Analytic model with the same expectation as the mode.
Model analytic_counterpart(CircumradiusMode m);

/// Handling of cells that the sampled pattern does not determine exactly.
struct BoundaryPolicy
{
  enum class Fallback
  {
    analytic_draw,  // draw the radius from the circumradius law
    exclude,        // drop the BS from the sum
  };
  /// Ring sampled beyond r_net; nullopt means 3 / sqrt(pi lambda).
  std::optional<double> guard_m;
  Fallback fallback = Fallback::analytic_draw;
};

struct SimulationPlan
{
  NetworkScenario scenario{};
  int n_realizations = 200;
  std::uint64_t master_seed = 1;
  CircumradiusMode circumradius_mode = CircumradiusMode::true_voronoi;
  BoundaryPolicy boundary_policy{};
  bool keep_totals = false;

  /// Needs a finite r_net and n_realizations >= 1.
  void validate() const;
};

struct SimulationEstimate
{
  double mean_watts = 0.0;
  double std_error_watts = 0.0;  // sample std / sqrt(n)
  int n_realizations = 0;
  std::vector<double> per_realization_totals;  // filled when keep_totals
  double mean_transmitters = 0.0;              // per realization
  double boundary_fraction = 0.0;              // transmitters handled by the fallback
};

/// Campbell-sum estimate of the worst-case network interference: each
/// transmitter (BS in the half-plane x > 0 with r_exc <= r <= r_net)
/// contributes its bounded single-BS interference with phi_m from its cell
/// radius. Deterministic in master_seed for any thread count.
SimulationEstimate run_simulation(const SimulationPlan& p);

struct SweepPoint
{
  double intensity_bs = 0.0;
  double r_exc_m = 0.0;
  SimulationEstimate estimate;
};

/// Cartesian product over intensities (outer) and exclusion radii (inner).
/// Each realization is drawn once per intensity and thinned for every
/// exclusion radius, so per-realization totals are non-increasing in r_exc.
/// Cells keep the structure of the unthinned pattern.
std::vector<SweepPoint> sweep(const SimulationPlan& p, std::span<const double> r_exc_values,
                              std::span<const double> lambda_values);

}  // namespace specshare
