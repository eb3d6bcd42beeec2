#include "specshare/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "specshare/quadrature.hpp"

namespace specshare
{
namespace
{

// Inner integrals run this much tighter than the radial one so their error
// is a small share of the reported bound.
constexpr double inner_tol_share = 0.05;

// Upper truncation of the circumradius law in probability.
constexpr double radius_tail = 1e-6;

double radial_prefactor(const NetworkScenario& s)
{
  return s.intensity_bs * s.dl.per_user_watts() * s.pathloss.reference_gain() / s.dl.fdr;
}

void require_alpha_above_two(const NetworkScenario& s, const char* what)
{
  if (!(s.alpha() > 2.0))
    throw std::invalid_argument(std::string(what) + ": needs alpha > 2 for the far-field closed form");
}

// Radial integrand without the prefactor and without the azimuth/elevation
// factors: r / (r^2 + dh^2)^{alpha/2}.
double radial_kernel(double r, double dh, double alpha)
{
  return r * std::pow(r * r + dh * dh, -0.5 * alpha);
}

// Values of r in (lo, hi) where H(phi_t(r)) has a kink for a point-mass law.
std::vector<double> point_mass_kinks(const NetworkScenario& s, double phi_m, double lo, double hi)
{
  const double dh = s.pathloss.height_difference();
  std::vector<double> out;
  if (dh <= 0.0)
    return out;
  auto add_phi = [&](double phi) {
    if (phi <= 0.0 || phi >= pi / 2)
      return;
    const double r = dh / std::tan(phi);
    if (r > lo && r < hi)
      out.push_back(r);
  };
  add_phi(phi_m);
  const double s_edge = std::sin(phi_m) - 1.0 / s.bs_array.n_el;
  if (s_edge > 0.0)
    add_phi(std::asin(s_edge));
  return out;
}

void check_law_intensity(const NetworkScenario& s, const CircumradiusDistribution& d)
{
  if (std::abs(d.intensity() / s.intensity_bs - 1.0) > 1e-12)
    throw std::invalid_argument("circumradius distribution intensity does not match the scenario");
}

InterferenceResult make_result(Model m, const NetworkScenario& s, const RadiusLaw& law)
{
  InterferenceResult r;
  r.model = m;
  r.intensity_bs = s.intensity_bs;
  r.r_exc_m = s.r_exc_m;
  r.r_net_m = s.r_net_m;
  r.radius_law = law.name();
  return r;
}

}  // namespace

NetworkScenario NetworkScenario::reference()
{
  return NetworkScenario{};
}

void NetworkScenario::validate() const
{
  dl.validate();
  pathloss.validate();
  if (pathloss.h_bs_m != bs_array.height_m || pathloss.h_rad_m != radar_array.height_m)
    throw std::invalid_argument("scenario: pathloss heights must match the array heights");
  if (pathloss.height_difference() < 0.0)
    throw std::invalid_argument("scenario: the BS must not sit below the radar");
  if (!(intensity_bs > 0.0) || !std::isfinite(intensity_bs))
    throw std::invalid_argument("scenario: intensity_bs must be finite and > 0");
  if (!(r_exc_m > 0.0) || !std::isfinite(r_exc_m))
    throw std::invalid_argument("scenario: r_exc_m must be finite and > 0");
  if (!(r_net_m > r_exc_m))
    throw std::invalid_argument("scenario: r_net_m must exceed r_exc_m");
  if (std::isinf(r_net_m) && !(alpha() > 2.0))
    throw std::invalid_argument("scenario: an unbounded network converges only for alpha > 2");
}

double NetworkScenario::average_area_radius() const
{
  return 1.0 / std::sqrt(pi * intensity_bs);
}

double NetworkScenario::elevation_parameter() const
{
  return bs_array.height_m * std::sqrt(pi * intensity_bs);
}

double min_elevation(double h_bs_m, double r_c)
{
  return std::atan2(h_bs_m, r_c);
}

std::string_view to_string(Model m)
{
  switch (m)
  {
  case Model::cbc:
    return "cbc";
  case Model::cbc_approx:
    return "cbc-approx";
  case Model::aaecc:
    return "aaecc";
  case Model::aaecc_approx:
    return "aaecc-approx";
  case Model::monte_carlo:
    return "monte-carlo";
  }
  return "unknown";
}

std::optional<Model> parse_model(std::string_view s)
{
  for (Model m : {Model::cbc, Model::cbc_approx, Model::aaecc, Model::aaecc_approx, Model::monte_carlo})
    if (to_string(m) == s)
      return m;
  return std::nullopt;
}

RadiusLaw RadiusLaw::analytic(const CircumradiusDistribution& d)
{
  RadiusLaw l;
  l.kind_ = Kind::analytic;
  l.dist_ = d;
  return l;
}

RadiusLaw RadiusLaw::point_mass(double r_c)
{
  if (!(r_c > 0.0) || !std::isfinite(r_c))
    throw std::invalid_argument("RadiusLaw::point_mass: radius must be finite and > 0");
  RadiusLaw l;
  l.kind_ = Kind::point_mass;
  l.radius_ = r_c;
  return l;
}

RadiusLaw RadiusLaw::empirical(std::vector<double> samples)
{
  if (samples.empty())
    throw std::invalid_argument("RadiusLaw::empirical: empty sample");
  for (double r : samples)
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("RadiusLaw::empirical: radii must be finite and > 0");
  RadiusLaw l;
  l.kind_ = Kind::empirical;
  l.samples_ = std::make_shared<const std::vector<double>>(std::move(samples));
  return l;
}

std::string RadiusLaw::name() const
{
  switch (kind_)
  {
  case Kind::analytic:
    return "analytic";
  case Kind::point_mass:
    return "point-mass";
  case Kind::empirical:
    return "empirical";
  }
  return "unknown";
}

double RadiusLaw::expected_gain_bound(const ArrayGeometry& bs, double phi, double rel_tol,
                                      std::size_t* evaluations) const
{
  const double h = bs.height_m;
  switch (kind_)
  {
  case Kind::point_mass:
    if (evaluations)
      ++*evaluations;
    return max_gain_bound(bs, phi, min_elevation(h, radius_));
  case Kind::empirical:
  {
    NeumaierSum acc;
    for (double r : *samples_)
      acc.add(max_gain_bound(bs, phi, min_elevation(h, r)));
    if (evaluations)
      *evaluations += samples_->size();
    return acc.value() / static_cast<double>(samples_->size());
  }
  case Kind::analytic:
    break;
  }

  // Integrate in mu = 4 pi lambda r^2, where the density is tabulated.
  const double scale = 4.0 * pi * dist_->intensity();
  const double r_hi = dist_->quantile(1.0 - radius_tail);
  const double mu_hi = scale * r_hi * r_hi;
  auto r_of = [&](double mu) { return std::sqrt(mu / scale); };
  auto f = [&](double mu) {
    return max_gain_bound(bs, phi, min_elevation(h, r_of(mu))) * dist_->density_mu(mu);
  };

  std::vector<double> bps{0.0, mu_hi};
  auto add_phi_m = [&](double phi_m) {
    if (phi_m <= 0.0 || phi_m >= pi / 2)
      return;
    const double r = h / std::tan(phi_m);
    const double mu = scale * r * r;
    if (mu > 0.0 && mu < mu_hi)
      bps.push_back(mu);
  };
  add_phi_m(phi);  // saturation edge
  const double s_edge = std::sin(phi) + 1.0 / bs.n_el;
  if (s_edge < 1.0)
    add_phi_m(std::asin(s_edge));  // main-lobe edge
  // the density has most of its mass below mu ~ 30; split there too
  for (double mu : {2.0, 6.0, 15.0, 30.0})
    if (mu < mu_hi)
      bps.push_back(mu);
  std::sort(bps.begin(), bps.end());

  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  const auto res = integrate_panels(f, bps, opt);
  if (evaluations)
    *evaluations += res.evaluations;
  return res.value;
}

double radar_azimuth_integral(const ArrayGeometry& radar, const BeamDirection& scan, double phi, double rel_tol,
                              std::size_t* evaluations)
{
  const double cphi = std::cos(phi);
  const double c0 = std::sin(scan.azimuth_rad) * std::cos(scan.elevation_rad);
  const double el = elevation_factor(radar, phi, scan.elevation_rad);
  if (el == 0.0)
    return 0.0;

  // nulls of the azimuth pattern: sin(theta) cos(phi) = c0 + 2m / n_az
  std::vector<double> bps{-pi / 2, pi / 2};
  if (cphi > 0.0)
  {
    const int n = radar.n_az;
    for (int m = -2 * n; m <= 2 * n; ++m)
    {
      const double s = (c0 + 2.0 * m / n) / cphi;
      if (s > -1.0 && s < 1.0)
        bps.push_back(std::asin(s));
    }
  }
  std::sort(bps.begin(), bps.end());

  auto f = [&](double theta) {
    return dirichlet_ratio(radar.n_az, 0.5 * pi * (std::sin(theta) * cphi - c0));
  };
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  const auto res = integrate_panels(f, bps, opt);
  if (evaluations)
    *evaluations += res.evaluations;
  return el * res.value / radar.elements();
}

InterferenceResult interference_cbc(const NetworkScenario& s, const CircumradiusDistribution& d, double tol)
{
  check_law_intensity(s, d);
  return interference_cbc(s, RadiusLaw::analytic(d), tol);
}

InterferenceResult interference_cbc(const NetworkScenario& s, const RadiusLaw& law, double tol)
{
  s.validate();
  if (!(tol > 0.0) || !(tol < 1.0))
    throw std::invalid_argument("interference_cbc: tol must be in (0, 1)");

  const double alpha = s.alpha();
  const double dh = s.pathloss.height_difference();
  const double inner_tol = std::max(tol * inner_tol_share, 1e-12);
  std::size_t evals = 0;

  // A(phi_r(r)) H(phi_t(r)) as a function of ground range
  auto angular = [&](double r) {
    const double phi_t = los_tx_elevation(s.pathloss, r);
    const double a = radar_azimuth_integral(s.radar_array, s.radar_scan, -phi_t, inner_tol, &evals);
    return a * law.expected_gain_bound(s.bs_array, phi_t, inner_tol, &evals);
  };

  std::vector<double> kinks;
  if (law.name() == "point-mass")
    kinks = point_mass_kinks(s, min_elevation(s.bs_array.height_m, s.average_area_radius()), s.r_exc_m, s.r_net_m);

  QuadratureOptions opt;
  opt.rel_tol = tol * (1.0 - 2.0 * inner_tol_share);
  QuadratureResult res;
  double factor = radial_prefactor(s);

  if (alpha > 2.0)
  {
    // u = (r_exc / r)^{alpha - 2} flattens the power-law tail: the Jacobian
    // cancels r^{1 - alpha}, leaving the bounded factor (r^2 / d^2)^{alpha/2}.
    const double p = alpha - 2.0;
    auto r_of = [&](double u) { return s.r_exc_m * std::pow(u, -1.0 / p); };
    auto f = [&](double u) {
      if (u <= 0.0)
        return angular(std::numeric_limits<double>::infinity());
      const double r = r_of(u);
      return angular(r) * std::pow(r * r / (r * r + dh * dh), 0.5 * alpha);
    };
    std::vector<double> bps{std::isinf(s.r_net_m) ? 0.0 : std::pow(s.r_exc_m / s.r_net_m, p), 1.0};
    for (double r : kinks)
      bps.push_back(std::pow(s.r_exc_m / r, p));
    std::sort(bps.begin(), bps.end());
    res = integrate_panels(f, bps, opt);
    factor *= std::pow(s.r_exc_m, -p) / p;
  }
  else
  {
    // finite network only; integrate in log r
    auto f = [&](double x) {
      const double r = std::exp(x);
      return angular(r) * radial_kernel(r, dh, alpha) * r;
    };
    std::vector<double> bps{std::log(s.r_exc_m), std::log(s.r_net_m)};
    for (double r : kinks)
      bps.push_back(std::log(r));
    std::sort(bps.begin(), bps.end());
    res = integrate_panels(f, bps, opt);
  }

  InterferenceResult out = make_result(Model::cbc, s, law);
  out.mean_watts = factor * res.value;
  out.error_estimate = factor * res.error + 2.0 * inner_tol * std::abs(out.mean_watts);
  out.evaluations = evals;
  if (!std::isfinite(out.mean_watts))
    throw ConvergenceError("interference_cbc: non-finite result");
  return out;
}

InterferenceResult interference_cbc_approx(const NetworkScenario& s, const CircumradiusDistribution& d)
{
  check_law_intensity(s, d);
  return interference_cbc_approx(s, RadiusLaw::analytic(d));
}

InterferenceResult interference_cbc_approx(const NetworkScenario& s, const RadiusLaw& law)
{
  s.validate();
  require_alpha_above_two(s, "interference_cbc_approx");
  const double p = s.alpha() - 2.0;
  std::size_t evals = 0;
  const double a0 = radar_azimuth_integral(s.radar_array, s.radar_scan, 0.0, 1e-10, &evals);
  const double h0 = law.expected_gain_bound(s.bs_array, 0.0, 1e-10, &evals);
  InterferenceResult out = make_result(Model::cbc_approx, s, law);
  out.mean_watts = radial_prefactor(s) / (p * std::pow(s.r_exc_m, p)) * a0 * h0;
  out.evaluations = evals;
  return out;
}

InterferenceResult interference_aaecc(const NetworkScenario& s, double tol)
{
  s.validate();
  auto out = interference_cbc(s, RadiusLaw::point_mass(s.average_area_radius()), tol);
  out.model = Model::aaecc;
  return out;
}

InterferenceResult interference_aaecc_approx(const NetworkScenario& s)
{
  s.validate();
  auto out = interference_cbc_approx(s, RadiusLaw::point_mass(s.average_area_radius()));
  out.model = Model::aaecc_approx;
  return out;
}

double eta_ratio(const NetworkScenario& s, const CircumradiusDistribution& d)
{
  s.validate();
  check_law_intensity(s, d);
  const double num = RadiusLaw::analytic(d).expected_gain_bound(s.bs_array, 0.0, 1e-10);
  const double den = max_gain_bound(s.bs_array, 0.0, min_elevation(s.bs_array.height_m, s.average_area_radius()));
  return num / den;
}

double solve_exclusion_radius(const NetworkScenario& s, const CircumradiusDistribution& d, double threshold_watts)
{
  if (!(threshold_watts > 0.0) || !std::isfinite(threshold_watts))
    throw std::invalid_argument("solve_exclusion_radius: threshold must be finite and > 0");
  s.validate();
  require_alpha_above_two(s, "solve_exclusion_radius");
  check_law_intensity(s, d);
  const double p = s.alpha() - 2.0;
  const auto law = RadiusLaw::analytic(d);
  const double a0 = radar_azimuth_integral(s.radar_array, s.radar_scan, 0.0, 1e-10);
  const double h0 = law.expected_gain_bound(s.bs_array, 0.0, 1e-10);
  return std::pow(radial_prefactor(s) * a0 * h0 / (p * threshold_watts), 1.0 / p);
}

}  // namespace specshare
