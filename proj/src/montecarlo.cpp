#include "specshare/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specshare/parallel.hpp"
#include "specshare/point_pattern.hpp"
#include "specshare/quadrature.hpp"
#include "specshare/random.hpp"
#include "specshare/tessellation.hpp"

namespace specshare
{
namespace
{

struct Contribution
{
  double range_m;
  double watts;
  bool fallback;  // radius from the boundary policy rather than the cell
  bool excluded;  // dropped by the boundary policy
};

// Bounded interference of one BS at (x, y) with minimum user elevation phi_m.
double bs_contribution(const NetworkScenario& s, const Point2& p, double range, double phi_m)
{
  const double phi_t = los_tx_elevation(s.pathloss, range);
  const BeamDirection at_radar{std::atan2(p.y, p.x), -phi_t};
  return pathloss(s.pathloss, range) * s.dl.per_user_watts() / s.dl.fdr
       * normalized_gain(s.radar_array, at_radar, s.radar_scan) * max_gain_bound(s.bs_array, phi_t, phi_m);
}

bool is_transmitter(const Point2& p, double range, double r_exc_min, double r_net)
{
  return p.x > 0.0 && range >= r_exc_min && range <= r_net;
}

// True when every Delaunay triangle around the nucleus has its empty
// circumdisk inside the sampled disk, so no missing point can change the cell.
bool cell_is_certified(const Tessellation& t, int n, double outer_m)
{
  if (t.is_boundary(n))
    return false;
  const auto& pts = t.pattern().points;
  const auto tris = t.triangles();
  const auto centers = t.circumcenters();
  for (int tri : t.incident_triangles(n))
  {
    const Point2& c = centers[static_cast<std::size_t>(tri)];
    const double radius = distance(c, pts[static_cast<std::size_t>(tris[static_cast<std::size_t>(tri)][0])]);
    if (std::hypot(c.x, c.y) + radius > outer_m)
      return false;
  }
  return true;
}

std::vector<Contribution> realization(const SimulationPlan& plan, const CircumradiusDistribution& dist,
                                      double r_exc_min, std::uint64_t seed)
{
  const NetworkScenario& s = plan.scenario;
  const double lambda = s.intensity_bs;
  const double h = s.bs_array.height_m;
  Rng radius_rng(derive_seed(seed, 1));
  std::vector<Contribution> out;

  auto fallback_radius = [&] { return dist.sample(radius_rng); };

  if (plan.circumradius_mode != CircumradiusMode::true_voronoi)
  {
    const auto pattern = sample_ppp(lambda, Annulus{r_exc_min, s.r_net_m}, derive_seed(seed, 0));
    for (const auto& p : pattern.points)
    {
      const double range = std::hypot(p.x, p.y);
      if (!is_transmitter(p, range, r_exc_min, s.r_net_m))
        continue;
      const double r_c = plan.circumradius_mode == CircumradiusMode::iid_analytic ? fallback_radius()
                                                                                  : s.average_area_radius();
      out.push_back({range, bs_contribution(s, p, range, min_elevation(h, r_c)), false, false});
    }
    return out;
  }

  // The whole disk is sampled: BSs inside the exclusion zone do not transmit
  // but still shape their neighbors' cells.
  const double guard = plan.boundary_policy.guard_m.value_or(default_guard(lambda));
  const double outer = s.r_net_m + guard;
  auto pattern = sample_ppp(lambda, Annulus{0.0, outer}, derive_seed(seed, 0));

  std::optional<Tessellation> tess;
  if (pattern.points.size() >= 3)
  {
    try
    {
      tess = build_tessellation(pattern, guard);
    }
    catch (const std::invalid_argument&)
    {
      // collinear pattern: every cell is unbounded
    }
  }

  const auto& pts = tess ? tess->pattern().points : pattern.points;
  for (std::size_t i = 0; i < pts.size(); ++i)
  {
    const Point2& p = pts[i];
    const double range = std::hypot(p.x, p.y);
    if (!is_transmitter(p, range, r_exc_min, s.r_net_m))
      continue;
    const int n = static_cast<int>(i);
    if (tess && cell_is_certified(*tess, n, outer))
    {
      const double r_c = tess->raw_circumradius(n);
      out.push_back({range, bs_contribution(s, p, range, min_elevation(h, r_c)), false, false});
    }
    else if (plan.boundary_policy.fallback == BoundaryPolicy::Fallback::analytic_draw)
    {
      out.push_back({range, bs_contribution(s, p, range, min_elevation(h, fallback_radius())), true, false});
    }
    else
    {
      out.push_back({range, 0.0, true, true});
    }
  }
  return out;
}

struct PointTally
{
  double total = 0.0;
  std::size_t transmitters = 0;
  std::size_t fallback = 0;
  std::size_t excluded = 0;
};

std::vector<std::vector<PointTally>> run_intensity(const SimulationPlan& plan, std::span<const double> r_exc_values,
                                                   std::uint64_t intensity_seed)
{
  const double r_exc_min = *std::min_element(r_exc_values.begin(), r_exc_values.end());
  const CircumradiusDistribution dist(plan.scenario.intensity_bs);
  const auto n_real = static_cast<std::size_t>(plan.n_realizations);
  std::vector<std::vector<PointTally>> tallies(n_real);

  parallel_for(n_real, [&](std::size_t i) {
    const auto contributions = realization(plan, dist, r_exc_min, derive_seed(intensity_seed, i));
    auto& row = tallies[i];
    row.resize(r_exc_values.size());
    for (std::size_t k = 0; k < r_exc_values.size(); ++k)
    {
      NeumaierSum sum;
      for (const auto& c : contributions)
      {
        if (c.range_m < r_exc_values[k])
          continue;
        sum.add(c.watts);
        ++row[k].transmitters;
        row[k].fallback += c.fallback ? 1 : 0;
        row[k].excluded += c.excluded ? 1 : 0;
      }
      row[k].total = sum.value();
    }
  });
  return tallies;
}

SimulationEstimate summarize(const SimulationPlan& plan, const std::vector<std::vector<PointTally>>& tallies,
                             std::size_t k)
{
  SimulationEstimate e;
  e.n_realizations = plan.n_realizations;
  const double n = plan.n_realizations;
  NeumaierSum sum, tx, fb;
  std::size_t transmitters = 0, excluded = 0;
  for (const auto& row : tallies)
  {
    sum.add(row[k].total);
    tx.add(static_cast<double>(row[k].transmitters));
    fb.add(static_cast<double>(row[k].fallback));
    transmitters += row[k].transmitters;
    excluded += row[k].excluded;
  }
  if (transmitters > 0 && excluded == transmitters)
    throw std::runtime_error("run_simulation: the boundary policy leaves no interior BSs");
  e.mean_watts = sum.value() / n;
  if (plan.n_realizations > 1)
  {
    NeumaierSum sq;
    for (const auto& row : tallies)
    {
      const double d = row[k].total - e.mean_watts;
      sq.add(d * d);
    }
    e.std_error_watts = std::sqrt(sq.value() / (n - 1.0) / n);
  }
  e.mean_transmitters = tx.value() / n;
  e.boundary_fraction = tx.value() > 0.0 ? fb.value() / tx.value() : 0.0;
  if (plan.keep_totals)
  {
    e.per_realization_totals.reserve(tallies.size());
    for (const auto& row : tallies)
      e.per_realization_totals.push_back(row[k].total);
  }
  return e;
}

}  // namespace

std::string_view to_string(CircumradiusMode m)
{
  switch (m)
  {
  case CircumradiusMode::true_voronoi:
    return "true-voronoi";
  case CircumradiusMode::iid_analytic:
    return "iid-analytic";
  case CircumradiusMode::fixed_average_area:
    return "fixed-average-area";
  }
  return "unknown";
}

std::optional<CircumradiusMode> parse_circumradius_mode(std::string_view s)
{
  for (auto m : {CircumradiusMode::true_voronoi, CircumradiusMode::iid_analytic, CircumradiusMode::fixed_average_area})
    if (to_string(m) == s)
      return m;
  return std::nullopt;
}

Model analytic_counterpart(CircumradiusMode m)
{
  return m == CircumradiusMode::fixed_average_area ? Model::aaecc : Model::cbc;
}

void SimulationPlan::validate() const
{
  scenario.validate();
  if (n_realizations < 1)
    throw std::invalid_argument("simulation: n_realizations must be >= 1");
  if (!std::isfinite(scenario.r_net_m))
    throw std::invalid_argument("simulation: needs a finite r_net_m");
  if (boundary_policy.guard_m && !(*boundary_policy.guard_m >= 0.0 && std::isfinite(*boundary_policy.guard_m)))
    throw std::invalid_argument("simulation: guard_m must be finite and >= 0");
}

SimulationEstimate run_simulation(const SimulationPlan& p)
{
  const double r_exc = p.scenario.r_exc_m;
  const double lambda = p.scenario.intensity_bs;
  auto points = sweep(p, std::span<const double>(&r_exc, 1), std::span<const double>(&lambda, 1));
  return std::move(points.front().estimate);
}

std::vector<SweepPoint> sweep(const SimulationPlan& p, std::span<const double> r_exc_values,
                              std::span<const double> lambda_values)
{
  if (r_exc_values.empty() || lambda_values.empty())
    throw std::invalid_argument("sweep: empty grid");
  std::vector<SweepPoint> out;
  for (std::size_t j = 0; j < lambda_values.size(); ++j)
  {
    SimulationPlan plan = p;
    plan.scenario.intensity_bs = lambda_values[j];
    for (double r : r_exc_values)
    {
      plan.scenario.r_exc_m = r;
      plan.validate();
    }
    const auto tallies = run_intensity(plan, r_exc_values, derive_seed(p.master_seed, j));
    for (std::size_t k = 0; k < r_exc_values.size(); ++k)
      out.push_back({lambda_values[j], r_exc_values[k], summarize(plan, tallies, k)});
  }
  return out;
}

}  // namespace specshare
