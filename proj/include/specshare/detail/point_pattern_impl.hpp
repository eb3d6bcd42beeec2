#pragma once

#include <cmath>
#include <numbers>
#include <random>

namespace specshare
{

template <class Gen>
void append_ppp(std::vector<Point2>& out, double intensity, const Annulus& region, Gen& rng)
{
  const double mean = intensity * region.area();
  if (mean <= 0.0)
    return;
  const auto count = std::poisson_distribution<long long>(mean)(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r0 = region.inner_m * region.inner_m;
  const double r1 = region.outer_m * region.outer_m;
  out.reserve(out.size() + static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i)
  {
    const double r = std::sqrt(r0 + unit(rng) * (r1 - r0));
    const double th = 2.0 * std::numbers::pi * unit(rng);
    out.push_back({r * std::cos(th), r * std::sin(th)});
  }
}

}  // namespace specshare
