#pragma once

#include <cstdint>
#include <vector>

#include "specshare/array.hpp"

namespace specshare
{

enum class PathlossVariant
{
  reference_exponent,  // beta(d) = pl_r0 * d^-alpha
  uma_los,             // 3GPP 3D UMa LoS with the 40 dB/decade slope
};

/// Large-scale gain beta(d) as a linear power ratio (<= 1 in practice).
struct PathlossModel
{
  PathlossVariant variant = PathlossVariant::uma_los;
  double pl_r0 = 1.0;   // linear gain at 1 m (reference-exponent only)
  double alpha = 4.0;   // exponent (reference-exponent only; uma-los is 4)
  double fc_ghz = 5.0;
  double h_bs_m = 50.0;
  double h_rad_m = 20.0;

  static PathlossModel uma_los(double fc_ghz, double h_bs_m, double h_rad_m);
  static PathlossModel reference(double pl_r0, double alpha, double h_bs_m, double h_rad_m);

  /// Throws std::invalid_argument on inconsistent parameters.
  void validate() const;

  [[nodiscard]] double exponent() const;
  /// PL(r0) such that beta(d) = PL(r0) d^-alpha.
  [[nodiscard]] double reference_gain() const;
  [[nodiscard]] double height_difference() const { return h_bs_m - h_rad_m; }
  /// beta at 3D distance d; d below 1 m is rejected.
  [[nodiscard]] double at_distance(double d_m) const;
  /// Loss in dB at 3D distance d (positive number).
  [[nodiscard]] double loss_db(double d_m) const;
};

/// beta(d) with d the 3D distance for the given ground range.
double pathloss(const PathlossModel& m, double ground_range_m);

struct DownlinkConfig
{
  int k_users = 4;
  double p_bs_watts = 1.0;
  BeamDirection diuc_beam{};  // dominant interfering user cluster
  double fdr = 1.0;           // radar frequency-dependent rejection (divisor)

  void validate() const;
  [[nodiscard]] double per_user_watts() const { return p_bs_watts / k_users; }
};

/// LoS elevations for a BS at the given ground range: phi_t at the BS
/// (positive, below its horizon) and phi_r = -phi_t at the radar.
double los_tx_elevation(const PathlossModel& m, double ground_range_m);
double los_rx_elevation(const PathlossModel& m, double ground_range_m);

/// One BS to radar link. The radar sees the BS at azimuth radar_azimuth_rad;
/// the BS boresight points at the radar.
struct BsRadarLink
{
  ArrayGeometry bs;
  ArrayGeometry radar;
  BeamDirection scan;
  DownlinkConfig dl;
  PathlossModel pathloss;
  double ground_range_m = 1e4;
  double radar_azimuth_rad = 0.0;
};

/// Radar receive gain toward the LoS direction of the BS.
double radar_los_gain(const BsRadarLink& link);

/// Upper bound on the mean interference from the DIUC of one BS:
/// beta(d) G_rad |a^H(0, phi_t) a(theta_k, phi_k)|^2 P_BS / (M K FDR).
double worst_case_bs_interference(const BsRadarLink& link);
double worst_case_bs_interference(const ArrayGeometry& g_bs, const ArrayGeometry& g_rad, const BeamDirection& scan,
                                  const DownlinkConfig& dl, const PathlossModel& m, double ground_range_m,
                                  double radar_azimuth_rad = 0.0);

/// Same link with the BS factor replaced by the elevation bound for a cell
/// whose users sit at elevations >= phi_m.
double bounded_bs_interference(const BsRadarLink& link, double phi_m);

/// Sampling law for multipath departure and arrival angles; both ends use it.
struct NlosAngleLaw
{
  double az_min_rad = -pi / 2;
  double az_max_rad = pi / 2;
  double el_min_rad = 0.0;
  double el_max_rad = deg_to_rad(20.0);
};

struct RicianChannelParams
{
  double k_factor = 100.0;  // linear; +infinity drops the multipath
  int n_paths = 8;
  NlosAngleLaw nlos_angle_law{};
  std::uint64_t seed = 1;

  void validate() const;
};

struct NlosPath
{
  BeamDirection tx;  // departure at the BS
  BeamDirection rx;  // arrival at the radar
};

/// Multipath angles, deterministic in params.seed.
std::vector<NlosPath> draw_nlos_paths(const RicianChannelParams& params);

/// True when the radar gain toward the LoS exceeds its gain toward every path.
bool los_gain_dominates(const BsRadarLink& link, const std::vector<NlosPath>& paths);

/// Exact mean of |i_rad|^2 for fixed multipath angles: the LoS and the
/// scattered terms weighted by K_R / (K_R + 1) and 1 / (K_R + 1).
double average_interference(const BsRadarLink& link, const RicianChannelParams& params,
                            const std::vector<NlosPath>& paths);

struct McInterference
{
  double mean_watts = 0.0;
  double half_width_watts = 0.0;  // 95% normal confidence half-width
  int n_realizations = 0;
};

/// Monte Carlo mean of |i_rad|^2 over fading amplitudes and residual phases
/// with W_BB = I and only the DIUC beam active. Multipath angles come from
/// draw_nlos_paths(params).
McInterference mc_single_bs_interference(const BsRadarLink& link, const RicianChannelParams& params,
                                         int n_realizations);

/// Same, with explicit multipath angles.
McInterference mc_single_bs_interference(const BsRadarLink& link, const RicianChannelParams& params,
                                         const std::vector<NlosPath>& paths, int n_realizations);

/// max |(W_RF^H W_RF - I)_ij| over i != j with normalized steering columns.
double precoder_diagonality_check(const ArrayGeometry& g_bs, const std::vector<BeamDirection>& cluster_beams);

}  // namespace specshare
