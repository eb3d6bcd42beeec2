#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace specshare
{

struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Annulus centered at the origin; inner_m = 0 gives a disk.
struct Annulus
{
  double inner_m = 0.0;
  double outer_m = 0.0;

  [[nodiscard]] double area() const;
  [[nodiscard]] bool contains(const Point2& p) const;
  /// Distance from p to the nearest edge of the annulus (p inside).
  [[nodiscard]] double edge_distance(const Point2& p) const;
};

struct PointPattern
{
  std::vector<Point2> points;
  Annulus region;
  double intensity = 0.0;  // points per m^2
  std::uint64_t seed = 0;
};

/// Homogeneous Poisson pattern on the annulus; deterministic in `seed`.
PointPattern sample_ppp(double intensity, const Annulus& region, std::uint64_t seed);

/// Appends an independent Poisson pattern on `region` drawn from `rng`.
template <class Gen>
void append_ppp(std::vector<Point2>& out, double intensity, const Annulus& region, Gen& rng);

}  // namespace specshare

#include "specshare/detail/point_pattern_impl.hpp"
