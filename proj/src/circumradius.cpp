#include "specshare/circumradius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "specshare/errors.hpp"
#include "specshare/tessellation.hpp"

namespace specshare
{
namespace detail
{

struct MuTable
{
  double step = 0.25;
  std::vector<double> g;        // density in mu at the nodes, clamped at zero
  std::vector<double> slope;    // monotone cubic tangents
  std::vector<double> cum;      // integral of the interpolant up to each node
  double raw_norm = 1.0;
  double scale = 1.0;           // 1 / raw_norm when renormalized

  [[nodiscard]] double mu_max() const { return step * static_cast<double>(g.size() - 1); }
};

}  // namespace detail

namespace
{

constexpr double mu_step = 0.25;
constexpr double mu_max = 120.0;
constexpr int taylor_order = 5;

// Arc-length coverage law and its integral.
double cover_f(double t)
{
  if (t > 0.5)
    return 1.0;
  const double s = std::sin(std::numbers::pi * t);
  return s * s;
}

double cover_g(double u)
{
  if (u <= 0.5)
    return 0.5 * u - std::sin(2.0 * std::numbers::pi * u) / (4.0 * std::numbers::pi);
  return 0.25 + (u - 0.5);
}

double radical_inverse(std::uint64_t i, unsigned base)
{
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0)
  {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

struct SimplexSample
{
  std::vector<double> weight;  // prod F(u_i)
  std::vector<double> excess;  // sum G(u_i) - 1, in [-1, 0]
};

// Shifted Halton points in k-1 dimensions mapped to uniform spacings of [0,1].
SimplexSample simplex_sample(int k, const CircumradiusOptions& opt)
{
  static constexpr std::array<unsigned, 15> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  if (k < 2 || k - 1 > static_cast<int>(primes.size()))
    throw std::invalid_argument("simplex_sample: dimension out of range");
  const auto dims = static_cast<std::size_t>(k - 1);
  Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(k)));
  std::vector<double> shift(dims);
  for (auto& s : shift)
    s = uniform01(rng);

  const auto n = static_cast<std::size_t>(opt.simplex_samples);
  SimplexSample out;
  out.weight.reserve(n);
  out.excess.reserve(n);
  std::vector<double> x(dims + 2);
  for (std::size_t i = 0; i < n; ++i)
  {
    x[0] = 0.0;
    x[dims + 1] = 1.0;
    for (std::size_t d = 0; d < dims; ++d)
    {
      double v = radical_inverse(i + 1, primes[d]) + shift[d];
      x[d + 1] = v >= 1.0 ? v - 1.0 : v;
    }
    std::sort(x.begin() + 1, x.end() - 1);
    double p = 1.0, s = 0.0;
    for (std::size_t d = 0; d <= dims; ++d)
    {
      const double u = x[d + 1] - x[d];
      p *= cover_f(u);
      s += cover_g(u);
    }
    out.weight.push_back(p);
    out.excess.push_back(s - 1.0);
  }
  return out;
}

// Moments sum_j P_j e^{mu x_j} x_j^p on the mu grid, p = 0..taylor_order.
std::vector<std::array<double, taylor_order + 1>> grid_moments(const SimplexSample& s, std::size_t nodes)
{
  std::vector<std::array<double, taylor_order + 1>> m(nodes);
  for (auto& row : m)
    row.fill(0.0);
  constexpr std::size_t resync = 32;
  for (std::size_t j = 0; j < s.weight.size(); ++j)
  {
    const double p = s.weight[j];
    if (p == 0.0)
      continue;
    const double x = s.excess[j];
    const double factor = std::exp(mu_step * x);
    double w = p;
    for (std::size_t i = 0; i < nodes; ++i)
    {
      if (i % resync == 0)
        w = p * std::exp(static_cast<double>(i) * mu_step * x);
      double t = w;
      auto& row = m[i];
      for (int q = 0; q <= taylor_order; ++q)
      {
        row[static_cast<std::size_t>(q)] += t;
        t *= x;
      }
      w *= factor;
    }
  }
  return m;
}

// e^{-mu} zeta_k(mu') with mu' = mu + delta, from moments at mu.
double shifted_value(const std::array<double, taylor_order + 1>& row, double delta, double n)
{
  double acc = 0.0, c = 1.0;
  for (int q = 0; q <= taylor_order; ++q)
  {
    acc += c * row[static_cast<std::size_t>(q)];
    c *= delta / (q + 1);
  }
  return std::exp(delta) * acc / n;
}

// Interpolant of a cubic Hermite cell integrated from 0 to t (t in [0,1]).
double hermite_integral(double g0, double g1, double m0, double m1, double h, double t)
{
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  const double i00 = t4 / 2 - t3 + t;
  const double i10 = t4 / 4 - 2 * t3 / 3 + t2 / 2;
  const double i01 = -t4 / 2 + t3;
  const double i11 = t4 / 4 - t3 / 3;
  return h * (i00 * g0 + i10 * h * m0 + i01 * g1 + i11 * h * m1);
}

std::shared_ptr<detail::MuTable> build_table(const CircumradiusOptions& opt)
{
  const auto nodes = static_cast<std::size_t>(std::lround(mu_max / mu_step)) + 1;
  std::vector<double> g(nodes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i)
    g[i] = std::exp(-mu_step * static_cast<double>(i));

  const double h = opt.diff_step;
  const double n = static_cast<double>(opt.simplex_samples);

  for (int k = 1; k <= opt.series_terms; ++k)
  {
    std::vector<std::array<double, taylor_order + 1>> mom;
    if (k >= 2)
      mom = grid_moments(simplex_sample(k, opt), nodes);
    double kfact = 1.0;
    for (int q = 2; q <= k; ++q)
      kfact *= q;

    for (std::size_t i = 0; i < nodes; ++i)
    {
      const double mu = mu_step * static_cast<double>(i);
      double z = 0.0, dz = 0.0;
      if (k == 1)
      {
        // u = (1): zeta_1 = e^{3 mu / 4}
        z = std::exp(-0.25 * mu);
        dz = 0.75 * z;
      }
      else
      {
        z = mom[i][0] / n;
        if (mu > 0.0)
        {
          const double up = shifted_value(mom[i], mu * ((1 + h) * (1 + h) - 1), n);
          const double dn = shifted_value(mom[i], mu * ((1 - h) * (1 - h) - 1), n);
          dz = (up - dn) / (4.0 * h * mu);
        }
      }
      const double pk = std::pow(-mu, k) / kfact;
      const double pk1 = std::pow(-mu, k - 1) / (kfact / k);
      g[i] += pk * (dz - z) - pk1 * z;
    }
  }

  auto table = std::make_shared<detail::MuTable>();
  table->step = mu_step;
  for (std::size_t i = 0; i < nodes; ++i)
  {
    const double mu = mu_step * static_cast<double>(i);
    const double bracket = g[i] * std::exp(mu);
    if (bracket < -1e-6)
      throw ConvergenceError("circumradius density negative at mu = " + std::to_string(mu) + " (bracket "
                             + std::to_string(bracket) + "); increase series_terms or simplex_samples");
    g[i] = std::max(g[i], 0.0);
  }

  // Fritsch-Carlson tangents keep the interpolant non-negative.
  std::vector<double> d(nodes - 1), m(nodes, 0.0);
  for (std::size_t i = 0; i + 1 < nodes; ++i)
    d[i] = (g[i + 1] - g[i]) / mu_step;
  m[0] = d[0];
  m[nodes - 1] = d[nodes - 2];
  for (std::size_t i = 1; i + 1 < nodes; ++i)
  {
    if (d[i - 1] * d[i] <= 0.0)
      m[i] = 0.0;
    else
      m[i] = 2.0 / (1.0 / d[i - 1] + 1.0 / d[i]);
  }
  for (std::size_t i = 0; i + 1 < nodes; ++i)
  {
    if (d[i] == 0.0)
    {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double a = m[i] / d[i], b = m[i + 1] / d[i];
    const double r = a * a + b * b;
    if (r > 9.0)
    {
      const double tau = 3.0 / std::sqrt(r);
      m[i] = tau * a * d[i];
      m[i + 1] = tau * b * d[i];
    }
  }

  std::vector<double> cum(nodes, 0.0);
  for (std::size_t i = 0; i + 1 < nodes; ++i)
    cum[i + 1] = cum[i] + hermite_integral(g[i], g[i + 1], m[i], m[i + 1], mu_step, 1.0);

  table->g = std::move(g);
  table->slope = std::move(m);
  table->cum = std::move(cum);
  table->raw_norm = table->cum.back();
  if (std::abs(table->raw_norm - 1.0) > 0.02)
  {
    table->scale = 1.0 / table->raw_norm;
    std::clog << "warning: truncated circumradius density integrates to " << table->raw_norm
              << "; renormalizing\n";
  }
  return table;
}

std::shared_ptr<const detail::MuTable> cached_table(const CircumradiusOptions& opt)
{
  using Key = std::tuple<int, int, double, std::uint64_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const detail::MuTable>> cache;
  const Key key{opt.series_terms, opt.simplex_samples, opt.diff_step, opt.seed};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;
  auto table = build_table(opt);
  cache.emplace(key, table);
  return table;
}

double table_density(const detail::MuTable& t, double mu)
{
  if (mu <= 0.0 || mu >= t.mu_max())
    return 0.0;
  const double pos = mu / t.step;
  const auto i = static_cast<std::size_t>(pos);
  const double s = pos - static_cast<double>(i);
  const double s2 = s * s, s3 = s2 * s;
  const double v = (2 * s3 - 3 * s2 + 1) * t.g[i] + (s3 - 2 * s2 + s) * t.step * t.slope[i]
                 + (-2 * s3 + 3 * s2) * t.g[i + 1] + (s3 - s2) * t.step * t.slope[i + 1];
  return std::max(v, 0.0) * t.scale;
}

double table_cdf(const detail::MuTable& t, double mu)
{
  if (mu <= 0.0)
    return 0.0;
  if (mu >= t.mu_max())
    return std::min(1.0, t.cum.back() * t.scale);
  const double pos = mu / t.step;
  const auto i = static_cast<std::size_t>(pos);
  const double s = pos - static_cast<double>(i);
  double v = t.cum[i] + hermite_integral(t.g[i], t.g[i + 1], t.slope[i], t.slope[i + 1], t.step, s);
  v = std::clamp(v, t.cum[i], t.cum[i + 1]);
  return std::min(1.0, v * t.scale);
}

void validate(const CircumradiusOptions& o)
{
  if (o.series_terms < 1 || o.series_terms > 16)
    throw std::invalid_argument("circumradius: series_terms must be in [1, 16]");
  if (o.simplex_samples < 1)
    throw std::invalid_argument("circumradius: simplex_samples must be >= 1");
  if (!(o.diff_step > 0.0 && o.diff_step < 0.1))
    throw std::invalid_argument("circumradius: diff_step must be in (0, 0.1)");
}

}  // namespace

CircumradiusDistribution::CircumradiusDistribution(double intensity, CircumradiusOptions options)
    : intensity_(intensity), options_(options)
{
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw std::invalid_argument("circumradius: intensity must be positive and finite");
  validate(options_);
  table_ = cached_table(options_);
}

double CircumradiusDistribution::density_mu(double mu) const { return table_density(*table_, mu); }
double CircumradiusDistribution::cdf_mu(double mu) const { return table_cdf(*table_, mu); }
double CircumradiusDistribution::raw_normalization() const { return table_->raw_norm; }
bool CircumradiusDistribution::renormalized() const { return table_->scale != 1.0; }

double CircumradiusDistribution::support_max() const
{
  return std::sqrt(table_->mu_max() / (4.0 * std::numbers::pi * intensity_));
}

double CircumradiusDistribution::pdf(double r) const
{
  if (!(r > 0.0))
    return 0.0;
  const double c = 4.0 * std::numbers::pi * intensity_;
  return 2.0 * c * r * density_mu(c * r * r);
}

double CircumradiusDistribution::cdf(double r) const
{
  if (!(r > 0.0))
    return 0.0;
  return cdf_mu(4.0 * std::numbers::pi * intensity_ * r * r);
}

double CircumradiusDistribution::quantile(double p) const
{
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("circumradius quantile: p outside [0, 1]");
  const double top = cdf_mu(table_->mu_max());
  if (p >= top)
    return support_max();
  double lo = 0.0, hi = table_->mu_max();
  for (int it = 0; it < 64 && hi - lo > 1e-13 * hi; ++it)
  {
    const double mid = 0.5 * (lo + hi);
    (cdf_mu(mid) < p ? lo : hi) = mid;
  }
  return std::sqrt(0.5 * (lo + hi) / (4.0 * std::numbers::pi * intensity_));
}

double CircumradiusDistribution::sample(Rng& rng) const
{
  return quantile(uniform01(rng));
}

double circumradius_pdf(const CircumradiusDistribution& d, double r_c)
{
  if (!(r_c > 0.0))
    throw std::invalid_argument("circumradius_pdf: r_c must be > 0");
  return d.pdf(r_c);
}

double circumradius_cdf(const CircumradiusDistribution& d, double r_c)
{
  if (!(r_c >= 0.0))
    throw std::invalid_argument("circumradius_cdf: r_c must be >= 0");
  return d.cdf(r_c);
}

double simplex_zeta(int k, double mu, const CircumradiusOptions& options)
{
  validate(options);
  if (k < 1)
    throw std::invalid_argument("simplex_zeta: k must be >= 1");
  if (k == 1)
    return std::exp(0.75 * mu);
  const auto s = simplex_sample(k, options);
  double acc = 0.0;
  for (std::size_t j = 0; j < s.weight.size(); ++j)
    acc += s.weight[j] * std::exp(mu * (s.excess[j] + 1.0));
  return acc / static_cast<double>(s.weight.size());
}

std::vector<double> empirical_circumradius_sample(double intensity, std::size_t n_cells, std::uint64_t seed)
{
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw std::invalid_argument("empirical_circumradius_sample: intensity must be positive and finite");
  if (n_cells < 1)
    throw std::invalid_argument("empirical_circumradius_sample: n_cells must be >= 1");

  // Cap the tessellation size and repeat; each disk holds about this many
  // interior cells past the guard ring.
  constexpr double max_interior = 150'000.0;
  const double target = std::min(max_interior, 1.05 * static_cast<double>(n_cells) + 200.0);
  const double guard = default_guard(intensity);
  const double radius = guard + std::sqrt(target / (std::numbers::pi * intensity));
  if (!std::isfinite(radius) || radius <= guard)
    throw std::runtime_error("empirical_circumradius_sample: cannot size the sampling region");

  std::vector<double> out;
  out.reserve(n_cells);
  const std::size_t max_rounds = 10 + 4 * (n_cells / static_cast<std::size_t>(target) + 1);
  for (std::size_t round = 0; out.size() < n_cells; ++round)
  {
    if (round >= max_rounds)
      throw std::runtime_error("empirical_circumradius_sample: too few interior cells after "
                               + std::to_string(round) + " tessellations");
    auto pattern = sample_ppp(intensity, {0.0, radius}, derive_seed(seed, round));
    if (pattern.points.size() < 3)
      continue;
    const auto t = build_tessellation(std::move(pattern));
    for (int i = 0; i < static_cast<int>(t.size()) && out.size() < n_cells; ++i)
      if (auto rc = t.circumradius(i))
        out.push_back(*rc);
  }
  return out;
}

}  // namespace specshare
