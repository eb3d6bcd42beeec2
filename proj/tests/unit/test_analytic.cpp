#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "specshare/analytic.hpp"

using namespace specshare;

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

NetworkScenario scenario(double lambda_km2, double r_exc_m, double r_net_m = inf)
{
  NetworkScenario s = NetworkScenario::reference();
  s.intensity_bs = lambda_km2 * 1e-6;
  s.r_exc_m = r_exc_m;
  s.r_net_m = r_net_m;
  return s;
}

NetworkScenario unit_arrays(double lambda_km2, double r_exc_m)
{
  auto s = scenario(lambda_km2, r_exc_m);
  s.bs_array = {1, 1, 50.0};
  s.radar_array = {1, 1, 20.0};
  return s;
}

double lambda_for_elevation_parameter(double x, double h_bs = 50.0)
{
  return x * x / (pi * h_bs * h_bs);
}

}  // namespace

TEST_CASE("scenario validation")
{
  CHECK_NOTHROW(NetworkScenario::reference().validate());
  auto s = scenario(0.1, 5e3, 4e3);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = scenario(0.1, 5e3);
  s.pathloss = PathlossModel::reference(1e-3, 2.0, 50.0, 20.0);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // alpha = 2 with an unbounded network
  s.r_net_m = 1e5;
  CHECK_NOTHROW(s.validate());
  s.bs_array = {10, 10, 30.0};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // heights out of sync
  s = scenario(0.0, 5e3);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("model names round trip")
{
  for (Model m : {Model::cbc, Model::cbc_approx, Model::aaecc, Model::aaecc_approx, Model::monte_carlo})
    CHECK(parse_model(to_string(m)) == m);
  CHECK_FALSE(parse_model("ppp").has_value());
}

TEST_CASE("radar azimuth integral")
{
  const auto s = NetworkScenario::reference();
  // numpy: Simpson over 400001 points of the explicit steering-vector gain
  CHECK(radar_azimuth_integral(s.radar_array, s.radar_scan, 0.0) == doctest::Approx(1.3362795669107475).epsilon(1e-7));
  // a single element integrates to the width of the half-plane
  CHECK(radar_azimuth_integral({1, 1, 0.0}, s.radar_scan, 0.3) == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("closed forms")
{
  SUBCASE("unit gains")
  {
    const auto s = unit_arrays(0.1, 8e3);
    const CircumradiusDistribution d(s.intensity_bs);
    const double expect = s.intensity_bs * 1.0 * s.pathloss.reference_gain() * pi / (4.0 * 2.0 * 8e3 * 8e3);
    CHECK(interference_cbc_approx(s, d).mean_watts == doctest::Approx(expect).epsilon(1e-9));
    CHECK(interference_aaecc_approx(s).mean_watts == doctest::Approx(expect).epsilon(1e-9));
  }
  SUBCASE("power law in the exclusion radius")
  {
    const auto s = scenario(0.1, 1e4);
    auto h = s;
    h.r_exc_m = 5e3;
    const CircumradiusDistribution d(s.intensity_bs);
    CHECK(interference_cbc_approx(h, d).mean_watts / interference_cbc_approx(s, d).mean_watts
          == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("nominal closed form against an independent evaluation")
  {
    // numpy: G_max by brute-force search over the DIUC elevation
    CHECK(interference_aaecc_approx(scenario(0.1, 1e4)).mean_watts
          == doctest::Approx(4.526378716822879e-16).epsilon(1e-6));
  }
  SUBCASE("ratio of approximations is eta")
  {
    for (double lam : {0.01, 0.1, 1.0})
    {
      const auto s = scenario(lam, 7e3);
      const CircumradiusDistribution d(s.intensity_bs);
      const double ratio = interference_cbc_approx(s, d).mean_watts / interference_aaecc_approx(s).mean_watts;
      CHECK(ratio == doctest::Approx(eta_ratio(s, d)).epsilon(1e-12));
    }
  }
  SUBCASE("alpha must exceed two")
  {
    auto s = scenario(0.1, 5e3, 1e5);
    s.pathloss = PathlossModel::reference(1e-3, 2.0, 50.0, 20.0);
    const CircumradiusDistribution d(s.intensity_bs);
    CHECK_THROWS_AS(interference_cbc_approx(s, d), std::invalid_argument);
    CHECK_THROWS_AS(interference_aaecc_approx(s), std::invalid_argument);
    CHECK(interference_cbc(s, d).mean_watts > 0.0);  // finite network is fine
  }
}

TEST_CASE("full integrals")
{
  SUBCASE("nominal model against an independent evaluation")
  {
    // scipy quad in log r with Simpson azimuth integrals and brute-force G_max
    const auto r = interference_aaecc(scenario(0.1, 1e4));
    CHECK(r.mean_watts == doctest::Approx(4.4902517692781355e-16).epsilon(1e-5));
    CHECK(r.model == Model::aaecc);
    CHECK(r.radius_law == "point-mass");
  }
  SUBCASE("point mass at r_a reproduces the nominal model")
  {
    const auto s = scenario(0.3, 6e3, 1e5);
    const auto a = interference_aaecc(s);
    const auto c = interference_cbc(s, RadiusLaw::point_mass(s.average_area_radius()));
    CHECK(c.mean_watts == doctest::Approx(a.mean_watts).epsilon(1e-14));
  }
  SUBCASE("worst case dominates nominal over the sweep")
  {
    for (double lam : {0.01, 0.1})
    {
      for (double r_exc : {5e3, 10e3, 20e3, 30e3})
      {
        const auto s = scenario(lam, r_exc, 1e5);
        const CircumradiusDistribution d(s.intensity_bs);
        CHECK(interference_cbc(s, d).mean_watts >= interference_aaecc(s).mean_watts);
      }
    }
  }
  SUBCASE("monotone in exclusion radius, intensity and power")
  {
    const CircumradiusDistribution d(1e-7);
    double prev = inf;
    for (double r_exc : {5e3, 8e3, 12e3, 20e3, 30e3, 50e3})
    {
      const double v = interference_cbc(scenario(0.1, r_exc, 1e5), d).mean_watts;
      CHECK(v < prev);
      prev = v;
    }
    prev = 0.0;
    for (double lam : {0.01, 0.03, 0.1, 0.3})
    {
      const auto s = scenario(lam, 5e3, 1e5);
      const double v = interference_cbc(s, CircumradiusDistribution(s.intensity_bs)).mean_watts;
      CHECK(v > prev);
      prev = v;
    }
    auto s = scenario(0.1, 5e3, 1e5);
    const double base = interference_aaecc(s).mean_watts;
    s.dl.p_bs_watts = 3.0;
    CHECK(interference_aaecc(s).mean_watts == doctest::Approx(3.0 * base).epsilon(1e-12));
  }
  SUBCASE("linear in intensity when the gain bound saturates")
  {
    const auto s1 = scenario(1e-4, 5e3);
    const auto s2 = scenario(2e-4, 5e3);
    const double a = interference_cbc(s1, CircumradiusDistribution(s1.intensity_bs)).mean_watts;
    const double b = interference_cbc(s2, CircumradiusDistribution(s2.intensity_bs)).mean_watts;
    CHECK(b / a == doctest::Approx(2.0).epsilon(0.01));
  }
  SUBCASE("worst case approaches nominal as the elevation parameter vanishes")
  {
    double prev_gap = inf;
    for (double x : {0.03, 0.01, 0.003})
    {
      const auto s = scenario(lambda_for_elevation_parameter(x) * 1e6, 5e3);
      const double gap = interference_cbc(s, CircumradiusDistribution(s.intensity_bs)).mean_watts
                           / interference_aaecc(s).mean_watts
                       - 1.0;
      CHECK(gap >= 0.0);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);
  }
  SUBCASE("approximation improves with the exclusion radius")
  {
    const auto s0 = scenario(0.01, 5e3);
    const CircumradiusDistribution d(s0.intensity_bs);
    double prev = inf;
    for (double r_exc : {5e3, 10e3, 20e3, 30e3})
    {
      const auto s = scenario(0.01, r_exc);
      const double err = std::abs(interference_cbc_approx(s, d).mean_watts / interference_cbc(s, d).mean_watts - 1.0);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 0.1);
  }
  SUBCASE("tightening the tolerance stays inside the error estimate")
  {
    const auto s = scenario(0.1, 5e3, 1e5);
    const CircumradiusDistribution d(s.intensity_bs);
    const auto coarse = interference_cbc(s, d, 1e-3);
    const auto fine = interference_cbc(s, d, 5e-4);
    CHECK(std::abs(coarse.mean_watts - fine.mean_watts) <= coarse.error_estimate);
    CHECK(coarse.error_estimate <= 1e-3 * coarse.mean_watts);
    CHECK(coarse.evaluations > 0);
  }
  SUBCASE("empirical radius law agrees with the analytic one")
  {
    const auto s = scenario(0.1, 5e3);
    const CircumradiusDistribution d(s.intensity_bs);
    const auto sample = empirical_circumradius_sample(s.intensity_bs, 20000, 11);
    const double emp = interference_cbc(s, RadiusLaw::empirical(sample)).mean_watts;
    CHECK(emp == doctest::Approx(interference_cbc(s, d).mean_watts).epsilon(0.01));
  }
  SUBCASE("distribution must match the scenario intensity")
  {
    const auto s = scenario(0.1, 5e3);
    CHECK_THROWS_AS(interference_cbc(s, CircumradiusDistribution(2e-7)), std::invalid_argument);
  }
}

TEST_CASE("eta")
{
  SUBCASE("tends to one and grows with the elevation parameter")
  {
    double prev = 1.0;
    for (double x : {0.001, 0.0089, 0.0198, 0.028, 0.044, 0.0886, 0.1253, 0.2})
    {
      auto s = NetworkScenario::reference();
      s.intensity_bs = lambda_for_elevation_parameter(x);
      const double eta = eta_ratio(s, CircumradiusDistribution(s.intensity_bs));
      CHECK(eta >= prev);
      prev = eta;
    }
  }
  SUBCASE("published values in the saturated range")
  {
    const double xs[] = {0.0089, 0.0198, 0.028};
    const double published[] = {1.004, 1.022, 1.045};
    for (int i = 0; i < 3; ++i)
    {
      auto s = NetworkScenario::reference();
      s.intensity_bs = lambda_for_elevation_parameter(xs[i]);
      CHECK(eta_ratio(s, CircumradiusDistribution(s.intensity_bs)) == doctest::Approx(published[i]).epsilon(0.1));
    }
  }
  SUBCASE("typical macro deployment stays below 3 dB")
  {
    auto s = NetworkScenario::reference();
    s.intensity_bs = lambda_for_elevation_parameter(0.095);
    CHECK(eta_ratio(s, CircumradiusDistribution(s.intensity_bs)) < 2.0);
  }
  SUBCASE("full-integral ratio is nearly flat in the exclusion radius")
  {
    double lo = inf, hi = 0.0;
    for (double r_exc : {5e3, 10e3, 20e3, 30e3})
    {
      const auto s = scenario(0.1, r_exc, 1e5);
      const double eta = interference_cbc(s, CircumradiusDistribution(s.intensity_bs)).mean_watts
                       / interference_aaecc(s).mean_watts;
      lo = std::min(lo, eta);
      hi = std::max(hi, eta);
    }
    CHECK(hi / lo < 1.1);
  }
}

TEST_CASE("exclusion radius")
{
  const auto s = scenario(0.1, 1e4);
  const CircumradiusDistribution d(s.intensity_bs);
  const double threshold = interference_cbc_approx(s, d).mean_watts;
  CHECK(solve_exclusion_radius(s, d, threshold) == doctest::Approx(1e4).epsilon(1e-12));
  CHECK(solve_exclusion_radius(s, d, 4.0 * threshold) == doctest::Approx(5e3).epsilon(1e-12));

  SUBCASE("agrees with root finding on the full integral")
  {
    // -120 dBm puts the radius near 7 km, where the far-field form is within a few percent
    const double th = std::pow(10.0, (-120.0 - 30.0) / 10.0);
    const double r = solve_exclusion_radius(s, d, th);
    double lo = 1e3, hi = 1e6;
    for (int i = 0; i < 60; ++i)
    {
      const double mid = std::sqrt(lo * hi);
      auto t = s;
      t.r_exc_m = mid;
      (interference_cbc(t, d).mean_watts > th ? lo : hi) = mid;
    }
    CHECK(r == doctest::Approx(lo).epsilon(0.05));
  }
  CHECK_THROWS_AS(solve_exclusion_radius(s, d, 0.0), std::invalid_argument);
}
