#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "specshare/point_pattern.hpp"

namespace specshare
{

/// Delaunay triangulation of a point pattern and the dual Voronoi cells.
///
/// Voronoi vertices are the circumcenters of the Delaunay triangles; the
/// circumradius of a cell is the largest circumradius among the triangles
/// incident to its nucleus. Cells on the convex hull are unbounded, and
/// cells whose nucleus lies within `guard_m` of the region edge may be
/// clipped by points missing outside the region; both are flagged.
class Tessellation
{
public:
  using Triangle = std::array<int, 3>;  // counter-clockwise vertex indices

  [[nodiscard]] const PointPattern& pattern() const { return pattern_; }
  [[nodiscard]] std::size_t size() const { return pattern_.points.size(); }
  [[nodiscard]] std::span<const Triangle> triangles() const { return triangles_; }
  [[nodiscard]] std::span<const Point2> circumcenters() const { return centers_; }
  /// Neighbor across the edge opposite each vertex, -1 on the hull.
  [[nodiscard]] std::span<const Triangle> adjacency() const { return adjacency_; }
  [[nodiscard]] double guard_m() const { return guard_m_; }

  /// Voronoi vertices of the cell, counter-clockwise around the nucleus.
  /// For unbounded cells only the finite vertices are listed.
  [[nodiscard]] std::vector<Point2> cell_vertices(int nucleus) const;

  /// Triangles incident to the nucleus.
  [[nodiscard]] std::span<const int> incident_triangles(int nucleus) const;

  [[nodiscard]] bool is_unbounded(int nucleus) const;
  [[nodiscard]] bool is_boundary(int nucleus) const;

  /// Max distance from the nucleus to its Voronoi vertices, or nullopt for
  /// flagged (unbounded or near-edge) cells.
  [[nodiscard]] std::optional<double> circumradius(int nucleus) const;

  /// Circumradius ignoring the boundary flag; infinite for hull cells.
  [[nodiscard]] double raw_circumradius(int nucleus) const;

private:
  friend Tessellation build_tessellation(PointPattern, std::optional<double>);
  void check_index(int nucleus) const;

  PointPattern pattern_;
  std::vector<Triangle> triangles_;
  std::vector<Triangle> adjacency_;  // [i] is across the edge opposite vertex i, -1 on the hull
  std::vector<Point2> centers_;
  std::vector<int> incident_offsets_;
  std::vector<int> incident_;
  std::vector<char> hull_;
  std::vector<char> boundary_;
  double guard_m_ = 0.0;
};

/// Builds the Delaunay triangulation (Bowyer-Watson). The guard distance
/// defaults to 3 / sqrt(pi * intensity) when the pattern has an intensity,
/// else 0. Throws std::invalid_argument for fewer than 3 points or when all
/// points are collinear.
Tessellation build_tessellation(PointPattern pattern, std::optional<double> guard_m = std::nullopt);

/// Default guard band: three equal-area cell radii.
double default_guard(double intensity);

/// Same as Tessellation::circumradius; throws std::out_of_range for an invalid index.
std::optional<double> cell_circumradius(const Tessellation& t, int nucleus);

/// Plain-text listing: '#' comment lines, then one finite Voronoi edge per
/// line as "x1 y1 x2 y2" (meters, space separated).
void write_voronoi_edges(std::ostream& os, const Tessellation& t);

}  // namespace specshare
