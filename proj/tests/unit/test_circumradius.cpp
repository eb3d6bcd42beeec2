#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "specshare/circumradius.hpp"

using namespace specshare;

namespace
{

double ks_distance(std::vector<double> s, const CircumradiusDistribution& d)
{
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
  {
    const double f = d.cdf(s[i]);
    ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  return ks;
}

double mean(const std::vector<double>& v)
{
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("zeta_k against independent quadrature")
{
  // zeta_1 is exact; zeta_2 reduces to a 1-D integral over u in [0,1]
  CHECK(simplex_zeta(1, 3.0) == doctest::Approx(std::exp(2.25)));
  CHECK(simplex_zeta(2, 0.0) == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(simplex_zeta(2, 2.0) == doctest::Approx(1.4288924918046617).epsilon(1e-4));
  CHECK(simplex_zeta(2, 10.0) == doctest::Approx(102.30004818119532).epsilon(1e-4));
}

TEST_CASE("cdf matches the direct series")
{
  // Frozen from a plain Monte Carlo evaluation of the covering series itself,
  // with no differentiation or tabulation (2e6 normalized-exponential points).
  const CircumradiusDistribution d(1.0);
  const std::pair<double, double> frozen[] = {
    {0.5, 0.016489200865274185}, {0.8, 0.24312708445680342}, {1.0, 0.5595578441053978},
    {1.2, 0.8232176335605698},   {1.5, 0.9767359995466924},
  };
  for (const auto& [r, f] : frozen)
    CHECK(std::abs(d.cdf(r) - f) < 2e-3);
}

TEST_CASE("density basics")
{
  const double lambda = 1e-7;  // per m^2
  const CircumradiusDistribution d(lambda);
  const double scale = 1.0 / std::sqrt(lambda);

  SUBCASE("normalization")
  {
    CHECK(d.raw_normalization() == doctest::Approx(1.0).epsilon(1e-2));
    // independent trapezoid in r over (0, 5 / sqrt(lambda))
    const int n = 20000;
    const double top = 5.0 * scale, h = top / n;
    double acc = 0.0;
    for (int i = 1; i < n; ++i)
      acc += d.pdf(i * h);
    CHECK(acc * h == doctest::Approx(1.0).epsilon(1e-2));
  }
  SUBCASE("cdf bounds and monotonicity")
  {
    CHECK(d.cdf(0.0) == 0.0);
    CHECK(d.cdf(5.0 * scale) >= 0.999);
    double prev = 0.0;
    int violations = 0;
    for (int i = 1; i <= 5000; ++i)
    {
      const double v = d.cdf(i * 1e-3 * scale);
      if (v < prev || v > 1.0)
        ++violations;
      prev = v;
    }
    CHECK(violations == 0);
  }
  SUBCASE("pdf non-negative on a grid")
  {
    int violations = 0;
    for (int i = 1; i <= 5000; ++i)
      if (!(d.pdf(i * 1e-3 * scale) >= 0.0))
        ++violations;
    CHECK(violations == 0);
  }
  SUBCASE("small-radius behaviour")
  {
    // every correction carries powers of 4 pi lambda r^2, and the k = 1 term
    // cancels the leading one, so pdf / (8 pi lambda r) vanishes at zero
    const auto ratio = [&](double r) { return d.pdf(r) / (8 * std::numbers::pi * lambda * r); };
    CHECK(ratio(0.05 * scale) < 1e-2);
    CHECK(ratio(0.02 * scale) < ratio(0.05 * scale) + 1e-12);
  }
  SUBCASE("quantile inverts cdf")
  {
    for (double p : {0.01, 0.25, 0.5, 0.9, 0.999})
      CHECK(d.cdf(d.quantile(p)) == doctest::Approx(p).epsilon(1e-6));
  }
  SUBCASE("rejects bad arguments")
  {
    CHECK_THROWS_AS(circumradius_pdf(d, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(circumradius_cdf(d, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(CircumradiusDistribution(0.0), std::invalid_argument);
  }
}

TEST_CASE("scale invariance")
{
  const CircumradiusDistribution a(1e-7), b(4e-8);
  const double k = std::sqrt(1e-7 / 4e-8);
  for (double r : {500.0, 1500.0, 3000.0, 4500.0})
  {
    CHECK(a.pdf(r) == doctest::Approx(k * b.pdf(r * k)).epsilon(1e-12));
    CHECK(a.cdf(r) == doctest::Approx(b.cdf(r * k)).epsilon(1e-12));
  }
}

TEST_CASE("empirical sample")
{
  SUBCASE("positive and rescales with intensity")
  {
    const auto s1 = empirical_circumradius_sample(1.0, 2000, 9);
    const auto s4 = empirical_circumradius_sample(4.0, 2000, 9);
    REQUIRE(s1.size() == 2000);
    REQUIRE(s4.size() == 2000);
    for (std::size_t i = 0; i < s1.size(); ++i)
    {
      CHECK(s1[i] > 0.0);
      CHECK(2.0 * s4[i] == doctest::Approx(s1[i]).epsilon(1e-6));
    }
  }
  SUBCASE("mean stable across seeds")
  {
    // Neighboring cells share Voronoi vertices, so the spread of the mean is
    // estimated from independent tessellations rather than the iid formula.
    std::vector<double> means;
    for (std::uint64_t seed = 10; seed < 22; ++seed)
      means.push_back(mean(empirical_circumradius_sample(1.0, 3000, seed)));
    const double m = mean(means);
    double var = 0.0;
    for (double v : means)
      var += (v - m) * (v - m);
    const double sd = std::sqrt(var / static_cast<double>(means.size() - 1));
    const double a = mean(empirical_circumradius_sample(1.0, 3000, 1));
    const double b = mean(empirical_circumradius_sample(1.0, 3000, 2));
    CHECK(std::abs(a - b) < 3.0 * std::sqrt(2.0) * sd);
    CHECK(std::abs(a - m) < 3.0 * sd * std::sqrt(1.0 + 1.0 / static_cast<double>(means.size())));
  }
  SUBCASE("agrees with the analytic law")
  {
    const double lambda = 1e-7;
    const CircumradiusDistribution d(lambda);
    auto s = empirical_circumradius_sample(lambda, 20000, 3);
    CHECK(ks_distance(s, d) <= 0.02);
    std::nth_element(s.begin(), s.begin() + 10000, s.end());
    CHECK(s[10000] == doctest::Approx(d.quantile(0.5)).epsilon(0.02));
  }
  SUBCASE("rejects bad arguments")
  {
    CHECK_THROWS_AS(empirical_circumradius_sample(1.0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(empirical_circumradius_sample(-1.0, 10, 1), std::invalid_argument);
  }
}
