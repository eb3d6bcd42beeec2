#include "specshare/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "specshare/random.hpp"

namespace specshare
{
namespace
{

using Real = long double;

// Twice the signed area of (a, b, c); positive when counter-clockwise.
Real orient(const Point2& a, const Point2& b, const Point2& c)
{
  const Real ax = Real(a.x) - c.x, ay = Real(a.y) - c.y;
  const Real bx = Real(b.x) - c.x, by = Real(b.y) - c.y;
  return ax * by - ay * bx;
}

// Positive when d lies strictly inside the circumcircle of ccw (a, b, c).
Real incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d)
{
  const Real ax = Real(a.x) - d.x, ay = Real(a.y) - d.y;
  const Real bx = Real(b.x) - d.x, by = Real(b.y) - d.y;
  const Real cx = Real(c.x) - d.x, cy = Real(c.y) - d.y;
  const Real a2 = ax * ax + ay * ay;
  const Real b2 = bx * bx + by * by;
  const Real c2 = cx * cx + cy * cy;
  return a2 * (bx * cy - by * cx) - b2 * (ax * cy - ay * cx) + c2 * (ax * by - ay * bx);
}

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c)
{
  const Real bx = Real(b.x) - a.x, by = Real(b.y) - a.y;
  const Real cx = Real(c.x) - a.x, cy = Real(c.y) - a.y;
  const Real d = 2 * (bx * cy - by * cx);
  const Real b2 = bx * bx + by * by;
  const Real c2 = cx * cx + cy * cy;
  const Real ux = (cy * b2 - by * c2) / d;
  const Real uy = (bx * c2 - cx * b2) / d;
  return {static_cast<double>(a.x + ux), static_cast<double>(a.y + uy)};
}

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order)
{
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1)
  {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0)
    {
      if (rx == 1)
      {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

struct Tri
{
  std::array<int, 3> v{};
  std::array<int, 3> nb{-1, -1, -1};
  bool alive = true;
};

class BowyerWatson
{
public:
  explicit BowyerWatson(std::vector<Point2> pts) : p_(std::move(pts)), n_(static_cast<int>(p_.size())) {}

  void run()
  {
    add_super_triangle();
    for (int idx : insertion_order())
      insert(idx);
  }

  [[nodiscard]] const std::vector<Point2>& points() const { return p_; }
  [[nodiscard]] const std::vector<Tri>& tris() const { return t_; }
  [[nodiscard]] int real_count() const { return n_; }

private:
  void add_super_triangle()
  {
    double lo_x = p_[0].x, hi_x = p_[0].x, lo_y = p_[0].y, hi_y = p_[0].y;
    for (const auto& q : p_)
    {
      lo_x = std::min(lo_x, q.x);
      hi_x = std::max(hi_x, q.x);
      lo_y = std::min(lo_y, q.y);
      hi_y = std::max(hi_y, q.y);
    }
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    const double r = 1000.0 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    p_.push_back({cx - 2.0 * r, cy - r});
    p_.push_back({cx + 2.0 * r, cy - r});
    p_.push_back({cx, cy + 2.0 * r});
    t_.push_back({{n_, n_ + 1, n_ + 2}, {-1, -1, -1}, true});
    last_ = 0;
  }

  std::vector<int> insertion_order() const
  {
    double lo_x = p_[0].x, hi_x = p_[0].x, lo_y = p_[0].y, hi_y = p_[0].y;
    for (int i = 0; i < n_; ++i)
    {
      lo_x = std::min(lo_x, p_[i].x);
      hi_x = std::max(hi_x, p_[i].x);
      lo_y = std::min(lo_y, p_[i].y);
      hi_y = std::max(hi_y, p_[i].y);
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
    constexpr int order = 16;
    const double scale = ((1u << order) - 1) / span;
    std::vector<std::pair<std::uint64_t, int>> keys(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
    {
      const auto x = static_cast<std::uint32_t>((p_[i].x - lo_x) * scale);
      const auto y = static_cast<std::uint32_t>((p_[i].y - lo_y) * scale);
      keys[static_cast<std::size_t>(i)] = {hilbert_index(x, y, order), i};
    }
    std::sort(keys.begin(), keys.end());
    std::vector<int> out;
    out.reserve(keys.size());
    for (const auto& k : keys)
      out.push_back(k.second);
    return out;
  }

  bool contains(int ti, const Point2& q) const
  {
    const auto& v = t_[static_cast<std::size_t>(ti)].v;
    for (int i = 0; i < 3; ++i)
      if (orient(p_[v[(i + 1) % 3]], p_[v[(i + 2) % 3]], q) < 0)
        return false;
    return true;
  }

  int locate(const Point2& q)
  {
    int cur = last_;
    const std::size_t cap = 4 * t_.size() + 64;
    for (std::size_t step = 0; step < cap; ++step)
    {
      const Tri& tr = t_[static_cast<std::size_t>(cur)];
      int next = -1;
      // rotate the starting edge to avoid cycling on degenerate walks
      const int start = static_cast<int>(step % 3);
      for (int k = 0; k < 3 && next < 0; ++k)
      {
        const int i = (start + k) % 3;
        if (orient(p_[tr.v[(i + 1) % 3]], p_[tr.v[(i + 2) % 3]], q) < 0)
          next = tr.nb[i];
      }
      if (next < 0)
        return cur;
      cur = next;
    }
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (t_[i].alive && contains(static_cast<int>(i), q))
        return static_cast<int>(i);
    throw std::runtime_error("build_tessellation: point location failed");
  }

  bool in_circle(int ti, const Point2& q)
  {
    const auto& v = t_[static_cast<std::size_t>(ti)].v;
    return incircle(p_[v[0]], p_[v[1]], p_[v[2]], q) > 0;
  }

  void insert(int pi)
  {
    const Point2& q = p_[static_cast<std::size_t>(pi)];
    const int seed = locate(q);

    ++stamp_;
    mark_.resize(t_.size(), 0);
    cavity_.clear();
    cavity_.push_back(seed);
    mark_[static_cast<std::size_t>(seed)] = stamp_;
    for (std::size_t head = 0; head < cavity_.size(); ++head)
    {
      const Tri& tr = t_[static_cast<std::size_t>(cavity_[head])];
      for (int nb : tr.nb)
      {
        if (nb < 0 || mark_[static_cast<std::size_t>(nb)] == stamp_ || mark_[static_cast<std::size_t>(nb)] == -stamp_)
          continue;
        if (in_circle(nb, q))
        {
          mark_[static_cast<std::size_t>(nb)] = stamp_;
          cavity_.push_back(nb);
        }
        else
        {
          mark_[static_cast<std::size_t>(nb)] = -stamp_;
        }
      }
    }

    // The cavity must be star-shaped from q; grow it across any boundary
    // edge that q does not see strictly from the inside.
    for (bool grown = true; grown;)
    {
      grown = false;
      for (std::size_t c = 0; c < cavity_.size(); ++c)
      {
        const Tri& tr = t_[static_cast<std::size_t>(cavity_[c])];
        for (int i = 0; i < 3; ++i)
        {
          const int nb = tr.nb[i];
          if (nb >= 0 && mark_[static_cast<std::size_t>(nb)] == stamp_)
            continue;
          if (orient(p_[tr.v[(i + 1) % 3]], p_[tr.v[(i + 2) % 3]], q) <= 0)
          {
            if (nb < 0)
              throw std::runtime_error("build_tessellation: point outside the super triangle");
            mark_[static_cast<std::size_t>(nb)] = stamp_;
            cavity_.push_back(nb);
            grown = true;
          }
        }
      }
    }

    edges_.clear();
    for (int ci : cavity_)
    {
      const Tri& tr = t_[static_cast<std::size_t>(ci)];
      for (int i = 0; i < 3; ++i)
      {
        const int nb = tr.nb[i];
        if (nb >= 0 && mark_[static_cast<std::size_t>(nb)] == stamp_)
          continue;
        edges_.push_back({tr.v[(i + 1) % 3], tr.v[(i + 2) % 3], nb});
      }
    }
    for (int ci : cavity_)
      t_[static_cast<std::size_t>(ci)].alive = false;

    if (start_at_.size() < p_.size())
      start_at_.resize(p_.size(), -1);
    for (const auto& e : edges_)
    {
      const int id = static_cast<int>(t_.size());
      Tri tr;
      tr.v = {e.a, e.b, pi};
      tr.nb[2] = e.outer;
      t_.push_back(tr);
      start_at_[static_cast<std::size_t>(e.a)] = id;
      if (e.outer >= 0)
      {
        Tri& o = t_[static_cast<std::size_t>(e.outer)];
        for (int j = 0; j < 3; ++j)
          if (o.v[(j + 1) % 3] == e.b && o.v[(j + 2) % 3] == e.a)
            o.nb[j] = id;
      }
    }
    const int first = static_cast<int>(t_.size() - edges_.size());
    for (int id = first; id < static_cast<int>(t_.size()); ++id)
    {
      Tri& tr = t_[static_cast<std::size_t>(id)];
      const int next = start_at_[static_cast<std::size_t>(tr.v[1])];
      tr.nb[0] = next;
      t_[static_cast<std::size_t>(next)].nb[1] = id;
    }
    last_ = first;
  }

  struct Edge
  {
    int a, b, outer;
  };

  std::vector<Point2> p_;
  int n_;
  std::vector<Tri> t_;
  std::vector<int> mark_;
  std::vector<int> cavity_;
  std::vector<Edge> edges_;
  std::vector<int> start_at_;
  int stamp_ = 0;
  int last_ = 0;
};

double pattern_diameter(const PointPattern& p)
{
  if (p.region.outer_m > 0.0 && std::isfinite(p.region.outer_m))
    return 2.0 * p.region.outer_m;
  double lo_x = p.points[0].x, hi_x = lo_x, lo_y = p.points[0].y, hi_y = lo_y;
  for (const auto& q : p.points)
  {
    lo_x = std::min(lo_x, q.x);
    hi_x = std::max(hi_x, q.x);
    lo_y = std::min(lo_y, q.y);
    hi_y = std::max(hi_y, q.y);
  }
  return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

bool all_collinear(const std::vector<Point2>& pts, double diameter)
{
  const Point2& a = pts[0];
  std::size_t far = 1;
  double best = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
  {
    const double d = distance(a, pts[i]);
    if (d > best)
    {
      best = d;
      far = i;
    }
  }
  if (best <= 0.0)
    return true;
  const double tol = 1e-12 * diameter * diameter;
  for (const auto& q : pts)
    if (std::abs(static_cast<double>(orient(a, pts[far], q))) > tol)
      return false;
  return true;
}

}  // namespace

double default_guard(double intensity)
{
  return intensity > 0.0 ? 3.0 / std::sqrt(std::numbers::pi * intensity) : 0.0;
}

Tessellation build_tessellation(PointPattern pattern, std::optional<double> guard_m)
{
  const auto& pts = pattern.points;
  if (pts.size() < 3)
    throw std::invalid_argument("build_tessellation: need at least 3 points, got " + std::to_string(pts.size()));
  const double diameter = pattern_diameter(pattern);
  if (!(diameter > 0.0) || all_collinear(pts, diameter))
    throw std::invalid_argument("build_tessellation: all points are collinear");

  // Deterministic jitter breaks cocircular and collinear ties.
  std::vector<Point2> work(pts);
  const double amp = 1e-9 * diameter;
  for (std::size_t i = 0; i < work.size(); ++i)
  {
    const std::uint64_t h = splitmix64(i ^ 0x5DEECE66DULL);
    const double ux = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
    const double uy = static_cast<double>(splitmix64(h) >> 11) * 0x1.0p-53 - 0.5;
    work[i].x += amp * ux;
    work[i].y += amp * uy;
  }

  BowyerWatson bw(std::move(work));
  bw.run();

  const int n = bw.real_count();
  const auto& all = bw.tris();
  const auto& wp = bw.points();

  Tessellation t;
  t.guard_m_ = guard_m.value_or(default_guard(pattern.intensity));
  t.hull_.assign(static_cast<std::size_t>(n), 0);

  std::vector<int> remap(all.size(), -1);
  for (std::size_t i = 0; i < all.size(); ++i)
  {
    const Tri& tr = all[i];
    if (!tr.alive)
      continue;
    const bool super = tr.v[0] >= n || tr.v[1] >= n || tr.v[2] >= n;
    if (super)
    {
      for (int v : tr.v)
        if (v < n)
          t.hull_[static_cast<std::size_t>(v)] = 1;
      continue;
    }
    remap[i] = static_cast<int>(t.triangles_.size());
    t.triangles_.push_back(tr.v);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
  {
    if (remap[i] < 0)
      continue;
    Tessellation::Triangle adj{};
    for (int k = 0; k < 3; ++k)
      adj[static_cast<std::size_t>(k)] = all[i].nb[k] < 0 ? -1 : remap[static_cast<std::size_t>(all[i].nb[k])];
    t.adjacency_.push_back(adj);
  }

  t.centers_.reserve(t.triangles_.size());
  for (const auto& tr : t.triangles_)
  {
    const Point2 c = circumcenter(wp[tr[0]], wp[tr[1]], wp[tr[2]]);
    t.centers_.push_back(c);
  }

  t.incident_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& tr : t.triangles_)
    for (int v : tr)
      ++t.incident_offsets_[static_cast<std::size_t>(v) + 1];
  std::partial_sum(t.incident_offsets_.begin(), t.incident_offsets_.end(), t.incident_offsets_.begin());
  t.incident_.resize(static_cast<std::size_t>(t.incident_offsets_.back()));
  std::vector<int> fill(t.incident_offsets_.begin(), t.incident_offsets_.end() - 1);
  for (std::size_t i = 0; i < t.triangles_.size(); ++i)
    for (int v : t.triangles_[i])
      t.incident_[static_cast<std::size_t>(fill[static_cast<std::size_t>(v)]++)] = static_cast<int>(i);

  const bool has_region = pattern.region.outer_m > 0.0;
  t.boundary_.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
  {
    bool flag = t.hull_[static_cast<std::size_t>(i)] != 0;
    if (!flag && has_region)
      flag = pattern.region.edge_distance(pts[static_cast<std::size_t>(i)]) < t.guard_m_;
    t.boundary_[static_cast<std::size_t>(i)] = flag ? 1 : 0;
  }

  t.pattern_ = std::move(pattern);
  return t;
}

void Tessellation::check_index(int nucleus) const
{
  if (nucleus < 0 || static_cast<std::size_t>(nucleus) >= size())
    throw std::out_of_range("tessellation: nucleus index " + std::to_string(nucleus) + " out of range");
}

std::span<const int> Tessellation::incident_triangles(int nucleus) const
{
  check_index(nucleus);
  const auto b = static_cast<std::size_t>(incident_offsets_[static_cast<std::size_t>(nucleus)]);
  const auto e = static_cast<std::size_t>(incident_offsets_[static_cast<std::size_t>(nucleus) + 1]);
  return std::span<const int>(incident_).subspan(b, e - b);
}

std::vector<Point2> Tessellation::cell_vertices(int nucleus) const
{
  const auto inc = incident_triangles(nucleus);
  const Point2 o = pattern_.points[static_cast<std::size_t>(nucleus)];
  std::vector<std::pair<double, Point2>> tagged;
  tagged.reserve(inc.size());
  for (int ti : inc)
  {
    const Point2 c = centers_[static_cast<std::size_t>(ti)];
    // order by the direction of the triangle centroid, which stays in the
    // triangle's angular sector even when the circumcenter lies outside it
    const auto& tr = triangles_[static_cast<std::size_t>(ti)];
    double gx = 0.0, gy = 0.0;
    for (int v : tr)
    {
      gx += pattern_.points[static_cast<std::size_t>(v)].x;
      gy += pattern_.points[static_cast<std::size_t>(v)].y;
    }
    tagged.emplace_back(std::atan2(gy / 3.0 - o.y, gx / 3.0 - o.x), c);
  }
  std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Point2> out;
  out.reserve(tagged.size());
  for (const auto& [angle, c] : tagged)
    out.push_back(c);
  return out;
}

bool Tessellation::is_unbounded(int nucleus) const
{
  check_index(nucleus);
  return hull_[static_cast<std::size_t>(nucleus)] != 0;
}

bool Tessellation::is_boundary(int nucleus) const
{
  check_index(nucleus);
  return boundary_[static_cast<std::size_t>(nucleus)] != 0;
}

double Tessellation::raw_circumradius(int nucleus) const
{
  if (is_unbounded(nucleus))
    return std::numeric_limits<double>::infinity();
  const Point2 o = pattern_.points[static_cast<std::size_t>(nucleus)];
  double r = 0.0;
  for (int ti : incident_triangles(nucleus))
    r = std::max(r, distance(o, centers_[static_cast<std::size_t>(ti)]));
  return r;
}

std::optional<double> Tessellation::circumradius(int nucleus) const
{
  if (is_boundary(nucleus))
    return std::nullopt;
  return raw_circumradius(nucleus);
}

std::optional<double> cell_circumradius(const Tessellation& t, int nucleus)
{
  return t.circumradius(nucleus);
}

void write_voronoi_edges(std::ostream& os, const Tessellation& t)
{
  const auto tris = t.triangles();
  const auto centers = t.circumcenters();
  os << "# voronoi edges: x1 y1 x2 y2 (m)\n";
  os << "# nuclei " << t.size() << " triangles " << tris.size() << '\n';
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < tris.size(); ++i)
  {
    for (int k = 0; k < 3; ++k)
    {
      const int j = t.adjacency()[i][static_cast<std::size_t>(k)];
      if (j < 0 || static_cast<std::size_t>(j) < i)
        continue;
      const Point2 a = centers[i];
      const Point2 b = centers[static_cast<std::size_t>(j)];
      os << a.x << ' ' << a.y << ' ' << b.x << ' ' << b.y << '\n';
    }
  }
  os.precision(old);
}

}  // namespace specshare
