#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "specshare/montecarlo.hpp"
#include "specshare/parallel.hpp"

using namespace specshare;

namespace
{

SimulationPlan plan(double lambda_km2, double r_exc_m, CircumradiusMode mode, int n = 200)
{
  SimulationPlan p;
  p.scenario.intensity_bs = lambda_km2 * 1e-6;
  p.scenario.r_exc_m = r_exc_m;
  p.n_realizations = n;
  p.circumradius_mode = mode;
  return p;
}

bool within(double analytic, const SimulationEstimate& e, double n_se)
{
  return std::abs(analytic - e.mean_watts) <= n_se * e.std_error_watts;
}

}  // namespace

TEST_CASE("mode names round trip")
{
  for (auto m : {CircumradiusMode::true_voronoi, CircumradiusMode::iid_analytic, CircumradiusMode::fixed_average_area})
    CHECK(parse_circumradius_mode(to_string(m)) == m);
  CHECK_FALSE(parse_circumradius_mode("voronoi").has_value());
  CHECK(analytic_counterpart(CircumradiusMode::iid_analytic) == Model::cbc);
  CHECK(analytic_counterpart(CircumradiusMode::fixed_average_area) == Model::aaecc);
}

TEST_CASE("plan validation")
{
  auto p = plan(0.1, 5e3, CircumradiusMode::true_voronoi);
  p.n_realizations = 0;
  CHECK_THROWS_AS(run_simulation(p), std::invalid_argument);
  p.n_realizations = 5;
  p.scenario.r_net_m = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(run_simulation(p), std::invalid_argument);
  p.scenario.r_net_m = 1e5;
  const std::vector<double> none;
  const std::vector<double> one{5e3};
  CHECK_THROWS_AS(sweep(p, none, one), std::invalid_argument);
  CHECK_THROWS_AS(sweep(p, one, none), std::invalid_argument);
}

TEST_CASE("empty network")
{
  for (auto m : {CircumradiusMode::true_voronoi, CircumradiusMode::iid_analytic, CircumradiusMode::fixed_average_area})
  {
    const auto e = run_simulation(plan(1e-8, 5e3, m, 20));
    CHECK(e.mean_watts == 0.0);
    CHECK(e.std_error_watts == 0.0);
  }
}

TEST_CASE("determinism")
{
  auto p = plan(0.1, 5e3, CircumradiusMode::true_voronoi, 16);
  p.keep_totals = true;
  const auto a = run_simulation(p);
  REQUIRE(a.per_realization_totals.size() == 16);

  // same totals regardless of the worker count
  const char* old = std::getenv("SPECSHARE_THREADS");
  const std::string saved = old ? old : "";
  setenv("SPECSHARE_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  const auto b = run_simulation(p);
  setenv("SPECSHARE_THREADS", "1", 1);
  const auto c = run_simulation(p);
  if (old)
    setenv("SPECSHARE_THREADS", saved.c_str(), 1);
  else
    unsetenv("SPECSHARE_THREADS");

  CHECK(a.per_realization_totals == b.per_realization_totals);
  CHECK(a.per_realization_totals == c.per_realization_totals);
  CHECK(a.mean_watts == b.mean_watts);

  p.master_seed = 2;
  CHECK(run_simulation(p).per_realization_totals != a.per_realization_totals);
}

TEST_CASE("thinning keeps totals monotone")
{
  auto p = plan(0.1, 5e3, CircumradiusMode::true_voronoi, 20);
  p.keep_totals = true;
  const std::vector<double> r_exc{5e3, 10e3, 20e3, 30e3};
  const std::vector<double> lambdas{1e-7};
  const auto pts = sweep(p, r_exc, lambdas);
  REQUIRE(pts.size() == 4);
  for (std::size_t k = 1; k < pts.size(); ++k)
    for (std::size_t i = 0; i < 20; ++i)
      CHECK(pts[k].estimate.per_realization_totals[i] <= pts[k - 1].estimate.per_realization_totals[i]);

  // the single-point run is the first column of the sweep
  CHECK(run_simulation(p).mean_watts == pts[0].estimate.mean_watts);
}

TEST_CASE("agreement with the analytic counterparts")
{
  SUBCASE("average-area cells")
  {
    for (double r_exc : {10e3, 20e3})
    {
      const auto p = plan(0.1, r_exc, CircumradiusMode::fixed_average_area, 400);
      CHECK(within(interference_aaecc(p.scenario).mean_watts, run_simulation(p), 3.0));
    }
  }
  SUBCASE("independent circumradius draws")
  {
    for (double r_exc : {10e3, 20e3})
    {
      const auto p = plan(0.1, r_exc, CircumradiusMode::iid_analytic, 400);
      const CircumradiusDistribution d(p.scenario.intensity_bs);
      CHECK(within(interference_cbc(p.scenario, d).mean_watts, run_simulation(p), 3.0));
    }
  }
  SUBCASE("tessellation circumradii stay under the bound")
  {
    for (double r_exc : {10e3, 20e3})
    {
      const auto p = plan(0.1, r_exc, CircumradiusMode::true_voronoi, 200);
      const auto e = run_simulation(p);
      const double cbc = interference_cbc(p.scenario, CircumradiusDistribution(p.scenario.intensity_bs)).mean_watts;
      CHECK(cbc >= e.mean_watts - 3.0 * e.std_error_watts);
      CHECK(10.0 * std::log10(cbc / e.mean_watts) <= 1.0);
      CHECK(e.boundary_fraction < 0.05);
      CHECK(e.mean_transmitters > 1000.0);
    }
  }
}

TEST_CASE("doubling the intensity doubles the mean when the bound saturates")
{
  const auto a = run_simulation(plan(0.005, 30e3, CircumradiusMode::fixed_average_area, 4000));
  const auto b = run_simulation(plan(0.01, 30e3, CircumradiusMode::fixed_average_area, 4000));
  const double se = 2.0 * std::hypot(a.std_error_watts, b.std_error_watts / 2.0);
  CHECK(std::abs(b.mean_watts / a.mean_watts - 2.0) <= 3.0 * se / a.mean_watts);
}

TEST_CASE("boundary policy")
{
  auto p = plan(0.1, 5e3, CircumradiusMode::true_voronoi, 10);
  p.boundary_policy.guard_m = 0.0;
  const auto with_draw = run_simulation(p);
  CHECK(with_draw.boundary_fraction > 0.0);

  p.boundary_policy.fallback = BoundaryPolicy::Fallback::exclude;
  const auto excluded = run_simulation(p);
  CHECK(excluded.boundary_fraction == doctest::Approx(with_draw.boundary_fraction));
  CHECK(excluded.mean_watts <= with_draw.mean_watts);

  // a network too small to hold a single certified cell
  auto tiny = plan(0.1, 5e3, CircumradiusMode::true_voronoi, 5);
  tiny.scenario.intensity_bs = 1.5e-5;
  tiny.scenario.r_exc_m = 10.0;
  tiny.scenario.r_net_m = 300.0;
  tiny.boundary_policy.guard_m = 0.0;
  tiny.boundary_policy.fallback = BoundaryPolicy::Fallback::exclude;
  CHECK_THROWS_AS(run_simulation(tiny), std::runtime_error);

  p.boundary_policy.guard_m = -1.0;
  CHECK_THROWS_AS(run_simulation(p), std::invalid_argument);
}
