#include "specshare/point_pattern.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specshare/random.hpp"

namespace specshare
{

double Annulus::area() const
{
  return std::numbers::pi * (outer_m * outer_m - inner_m * inner_m);
}

bool Annulus::contains(const Point2& p) const
{
  const double r = std::hypot(p.x, p.y);
  return r >= inner_m && r <= outer_m;
}

double Annulus::edge_distance(const Point2& p) const
{
  const double r = std::hypot(p.x, p.y);
  const double outer = outer_m - r;
  return inner_m > 0.0 ? std::min(outer, r - inner_m) : outer;
}

PointPattern sample_ppp(double intensity, const Annulus& region, std::uint64_t seed)
{
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw std::invalid_argument("sample_ppp: intensity must be positive and finite");
  if (!(region.inner_m >= 0.0) || !(region.inner_m < region.outer_m) || !std::isfinite(region.outer_m))
    throw std::invalid_argument("sample_ppp: degenerate region (need 0 <= inner < outer < inf)");

  PointPattern p;
  p.region = region;
  p.intensity = intensity;
  p.seed = seed;
  Rng rng(seed);
  append_ppp(p.points, intensity, region, rng);
  return p;
}

}  // namespace specshare
