#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specshare/point_pattern.hpp"

using namespace specshare;

TEST_CASE("sample_ppp basic properties")
{
  const Annulus region{5e3, 1e5};

  SUBCASE("deterministic in seed")
  {
    const auto a = sample_ppp(1e-7, region, 42);
    const auto b = sample_ppp(1e-7, region, 42);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i)
    {
      CHECK(a.points[i].x == b.points[i].x);
      CHECK(a.points[i].y == b.points[i].y);
    }
  }
  SUBCASE("points inside the annulus")
  {
    const auto p = sample_ppp(1e-6, region, 7);
    for (const auto& q : p.points)
      CHECK(region.contains(q));
  }
  SUBCASE("vanishing intensity gives an empty pattern")
  {
    CHECK(sample_ppp(1e-18, region, 3).points.empty());
  }
  SUBCASE("rejects degenerate input")
  {
    CHECK_THROWS_AS(sample_ppp(1e-6, {1e5, 1e5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_ppp(1e-6, {2e5, 1e5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_ppp(0.0, region, 1), std::invalid_argument);
  }
}

TEST_CASE("sample_ppp mean count over seeds")
{
  const Annulus region{5e3, 1e5};
  const double lambda = 1e-6;
  const double mean = lambda * std::numbers::pi * (1e10 - 2.5e7);  // 31337.5
  const int seeds = 120;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s)
    sum += static_cast<double>(sample_ppp(lambda, region, static_cast<std::uint64_t>(s)).points.size());
  const double sigma = std::sqrt(mean / seeds);
  CHECK(std::abs(sum / seeds - mean) < 3.0 * sigma);
}

TEST_CASE("sample_ppp radial law is uniform in area")
{
  // Fraction of points inside the mid-area radius should be one half.
  const Annulus region{1.0, 3.0};
  const auto p = sample_ppp(2000.0, region, 11);
  const double r_half = std::sqrt(0.5 * (1.0 + 9.0));
  double inner = 0;
  for (const auto& q : p.points)
    if (std::hypot(q.x, q.y) < r_half)
      ++inner;
  const double n = static_cast<double>(p.points.size());
  CHECK(std::abs(inner / n - 0.5) < 3.0 * 0.5 / std::sqrt(n));
}
