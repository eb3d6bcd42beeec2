#include "specshare/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

#include "specshare/quadrature.hpp"
#include "specshare/random.hpp"

namespace specshare
{
namespace
{

using cplx = std::complex<double>;

cplx inner(const ComplexVector& a, const ComplexVector& b)
{
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += std::conj(a[i]) * b[i];
  return acc;
}

// a^H(dir) w_RF for the normalized DIUC beamformer.
cplx bs_response(const BsRadarLink& link, const BeamDirection& dir)
{
  const auto w = steering_vector(link.bs, link.dl.diuc_beam);
  return inner(steering_vector(link.bs, dir), w) / std::sqrt(static_cast<double>(link.bs.elements()));
}

BeamDirection los_tx_direction(const BsRadarLink& link)
{
  return {0.0, los_tx_elevation(link.pathloss, link.ground_range_m)};
}

BeamDirection los_rx_direction(const BsRadarLink& link)
{
  return {link.radar_azimuth_rad, los_rx_elevation(link.pathloss, link.ground_range_m)};
}

double prefactor(const BsRadarLink& link)
{
  return pathloss(link.pathloss, link.ground_range_m) * link.dl.per_user_watts() / link.dl.fdr;
}

}  // namespace

PathlossModel PathlossModel::uma_los(double fc_ghz, double h_bs_m, double h_rad_m)
{
  PathlossModel m;
  m.variant = PathlossVariant::uma_los;
  m.alpha = 4.0;
  m.fc_ghz = fc_ghz;
  m.h_bs_m = h_bs_m;
  m.h_rad_m = h_rad_m;
  m.validate();
  return m;
}

PathlossModel PathlossModel::reference(double pl_r0, double alpha, double h_bs_m, double h_rad_m)
{
  PathlossModel m;
  m.variant = PathlossVariant::reference_exponent;
  m.pl_r0 = pl_r0;
  m.alpha = alpha;
  m.h_bs_m = h_bs_m;
  m.h_rad_m = h_rad_m;
  m.validate();
  return m;
}

void PathlossModel::validate() const
{
  if (!(h_bs_m >= 0.0) || !(h_rad_m >= 0.0) || !std::isfinite(h_bs_m) || !std::isfinite(h_rad_m))
    throw std::invalid_argument("pathloss: heights must be finite and >= 0");
  if (variant == PathlossVariant::uma_los)
  {
    if (!(fc_ghz > 0.0) || !std::isfinite(fc_ghz))
      throw std::invalid_argument("pathloss: fc_ghz must be > 0");
    if (h_bs_m == h_rad_m)
      throw std::invalid_argument("pathloss: uma-los needs h_bs != h_rad");
  }
  else
  {
    if (!(pl_r0 > 0.0) || !std::isfinite(pl_r0))
      throw std::invalid_argument("pathloss: pl_r0 must be > 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw std::invalid_argument("pathloss: alpha must be > 0");
  }
}

double PathlossModel::exponent() const
{
  return variant == PathlossVariant::uma_los ? 4.0 : alpha;
}

double PathlossModel::reference_gain() const
{
  if (variant == PathlossVariant::reference_exponent)
    return pl_r0;
  const double dh = height_difference();
  const double db = 28.0 - 9.0 * std::log10(dh * dh) + 20.0 * std::log10(fc_ghz);
  return std::pow(10.0, -db / 10.0);
}

double PathlossModel::at_distance(double d_m) const
{
  if (!(d_m >= 1.0))
    throw std::invalid_argument("pathloss: 3D distance below the 1 m floor");
  return reference_gain() * std::pow(d_m, -exponent());
}

double PathlossModel::loss_db(double d_m) const
{
  return -10.0 * std::log10(at_distance(d_m));
}

double pathloss(const PathlossModel& m, double ground_range_m)
{
  if (!(ground_range_m > 0.0))
    throw std::invalid_argument("pathloss: ground range must be > 0");
  return m.at_distance(std::hypot(ground_range_m, m.height_difference()));
}

void DownlinkConfig::validate() const
{
  if (k_users < 1)
    throw std::invalid_argument("downlink: k_users must be >= 1");
  if (!(p_bs_watts > 0.0) || !std::isfinite(p_bs_watts))
    throw std::invalid_argument("downlink: p_bs_watts must be > 0");
  if (!(fdr > 0.0))
    throw std::invalid_argument("downlink: fdr must be > 0");
}

double los_tx_elevation(const PathlossModel& m, double ground_range_m)
{
  return std::atan(m.height_difference() / ground_range_m);
}

double los_rx_elevation(const PathlossModel& m, double ground_range_m)
{
  return -los_tx_elevation(m, ground_range_m);
}

double radar_los_gain(const BsRadarLink& link)
{
  return normalized_gain(link.radar, los_rx_direction(link), link.scan);
}

double worst_case_bs_interference(const BsRadarLink& link)
{
  link.dl.validate();
  const double bs_gain = normalized_gain(link.bs, los_tx_direction(link), link.dl.diuc_beam);
  return prefactor(link) * radar_los_gain(link) * bs_gain;
}

double worst_case_bs_interference(const ArrayGeometry& g_bs, const ArrayGeometry& g_rad, const BeamDirection& scan,
                                  const DownlinkConfig& dl, const PathlossModel& m, double ground_range_m,
                                  double radar_azimuth_rad)
{
  return worst_case_bs_interference(BsRadarLink{g_bs, g_rad, scan, dl, m, ground_range_m, radar_azimuth_rad});
}

double bounded_bs_interference(const BsRadarLink& link, double phi_m)
{
  link.dl.validate();
  const double bound = max_gain_bound(link.bs, los_tx_elevation(link.pathloss, link.ground_range_m), phi_m);
  return prefactor(link) * radar_los_gain(link) * bound;
}

void RicianChannelParams::validate() const
{
  if (!(k_factor > 0.0))
    throw std::invalid_argument("rician: k_factor must be > 0");
  if (n_paths < 1)
    throw std::invalid_argument("rician: n_paths must be >= 1");
  const auto& l = nlos_angle_law;
  if (!(l.az_min_rad >= -pi / 2 && l.az_min_rad <= l.az_max_rad && l.az_max_rad <= pi / 2))
    throw std::invalid_argument("rician: azimuth law outside [-pi/2, pi/2]");
  if (!(l.el_min_rad >= -pi / 2 && l.el_min_rad <= l.el_max_rad && l.el_max_rad <= pi / 2))
    throw std::invalid_argument("rician: elevation law outside [-pi/2, pi/2]");
}

std::vector<NlosPath> draw_nlos_paths(const RicianChannelParams& params)
{
  params.validate();
  Rng rng(derive_seed(params.seed, 0));
  const auto& l = params.nlos_angle_law;
  auto az = [&] {
    // keep the half-open azimuth range even when the law spans all of it
    const double v = l.az_min_rad + (l.az_max_rad - l.az_min_rad) * uniform01(rng);
    return std::min(v, std::nextafter(pi / 2, 0.0));
  };
  auto el = [&] { return l.el_min_rad + (l.el_max_rad - l.el_min_rad) * uniform01(rng); };
  std::vector<NlosPath> out;
  out.reserve(static_cast<std::size_t>(params.n_paths));
  for (int i = 0; i < params.n_paths; ++i)
  {
    const double t_az = az(), t_el = el();
    const double r_az = az(), r_el = el();
    out.push_back({BeamDirection{t_az, t_el}, BeamDirection{r_az, r_el}});
  }
  return out;
}

bool los_gain_dominates(const BsRadarLink& link, const std::vector<NlosPath>& paths)
{
  const double g_los = radar_los_gain(link);
  return std::all_of(paths.begin(), paths.end(),
                     [&](const NlosPath& p) { return normalized_gain(link.radar, p.rx, link.scan) < g_los; });
}

double average_interference(const BsRadarLink& link, const RicianChannelParams& params,
                            const std::vector<NlosPath>& paths)
{
  link.dl.validate();
  params.validate();
  const double los = radar_los_gain(link) * std::norm(bs_response(link, los_tx_direction(link)));
  if (std::isinf(params.k_factor))
    return prefactor(link) * los;
  double scattered = 0.0;
  for (const auto& p : paths)
    scattered += normalized_gain(link.radar, p.rx, link.scan) * std::norm(bs_response(link, p.tx));
  scattered /= static_cast<double>(paths.size());
  const double k = params.k_factor;
  return prefactor(link) * (k * los + scattered) / (k + 1.0);
}

McInterference mc_single_bs_interference(const BsRadarLink& link, const RicianChannelParams& params,
                                         int n_realizations)
{
  return mc_single_bs_interference(link, params, draw_nlos_paths(params), n_realizations);
}

McInterference mc_single_bs_interference(const BsRadarLink& link, const RicianChannelParams& params,
                                         const std::vector<NlosPath>& paths, int n_realizations)
{
  if (n_realizations < 1)
    throw std::invalid_argument("mc_single_bs_interference: n_realizations must be >= 1");
  link.dl.validate();
  params.validate();

  const bool los_only = std::isinf(params.k_factor);
  const double k = params.k_factor;
  const double scale = std::sqrt(prefactor(link));
  // deterministic path coefficients; the random parts multiply them
  const cplx b_los = (los_only ? 1.0 : std::sqrt(k / (k + 1.0))) * std::sqrt(radar_los_gain(link))
                   * bs_response(link, los_tx_direction(link));
  std::vector<cplx> b_path;
  if (!los_only)
  {
    const double w = 1.0 / std::sqrt((k + 1.0) * static_cast<double>(paths.size()));
    for (const auto& p : paths)
      b_path.push_back(w * std::sqrt(normalized_gain(link.radar, p.rx, link.scan)) * bs_response(link, p.tx));
  }

  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  NeumaierSum sum;
  NeumaierSum sum_sq;
  for (int n = 0; n < n_realizations; ++n)
  {
    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(n) + 1));
    // residual LoS phase, then gamma'_i ~ CN(0, 1); the data symbol has
    // constant modulus sqrt(P/K) so its phase drops out of |i|^2
    cplx i_rad = b_los * std::polar(1.0, 2.0 * pi * uniform01(rng));
    for (const auto& b : b_path)
      i_rad += b * cplx(normal(rng), normal(rng));
    const double power = scale * scale * std::norm(i_rad);
    sum.add(power);
    sum_sq.add(power * power);
  }
  const double n = n_realizations;
  McInterference out;
  out.n_realizations = n_realizations;
  out.mean_watts = sum.value() / n;
  if (n_realizations > 1)
  {
    const double var = std::max(0.0, (sum_sq.value() - n * out.mean_watts * out.mean_watts) / (n - 1.0));
    out.half_width_watts = 1.96 * std::sqrt(var / n);
  }
  return out;
}

double precoder_diagonality_check(const ArrayGeometry& g_bs, const std::vector<BeamDirection>& cluster_beams)
{
  if (cluster_beams.size() < 2)
    throw std::invalid_argument("precoder_diagonality_check: need at least 2 clusters");
  std::vector<ComplexVector> cols;
  cols.reserve(cluster_beams.size());
  for (const auto& b : cluster_beams)
    cols.push_back(steering_vector(g_bs, b));
  const double m = g_bs.elements();
  double worst = 0.0;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j)
      worst = std::max(worst, std::abs(inner(cols[i], cols[j])) / m);
  return worst;
}

}  // namespace specshare
