#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace specshare
{

constexpr double pi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

/// Uniform rectangular array with half-wavelength element spacing.
struct ArrayGeometry
{
  int n_az = 1;
  int n_el = 1;
  double height_m = 0.0;

  ArrayGeometry() = default;
  ArrayGeometry(int az, int el, double height);

  [[nodiscard]] int elements() const { return n_az * n_el; }
};

/// Azimuth in [-pi/2, pi/2), elevation in [-pi/2, pi/2].
/// Negative elevation points above the horizon, positive below.
struct BeamDirection
{
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;

  BeamDirection() = default;
  BeamDirection(double azimuth, double elevation);

  static BeamDirection from_degrees(double azimuth_deg, double elevation_deg);
};

using ComplexVector = std::vector<std::complex<double>>;

/// a_az(theta, phi) (x) a_el(phi); element (m, n) is stored at m * n_el + n.
ComplexVector steering_vector(const ArrayGeometry& g, const BeamDirection& d);

/// sin^2(N x) / sin^2(x), evaluated as N^2 at the removable singularity.
double dirichlet_ratio(int n, double x);

/// |a^H(observe) a(beam)|^2 / (n_az n_el).
///
/// Also the receive gain of a radar whose beamformer is the normalized
/// steering vector toward `beam`.
double normalized_gain(const ArrayGeometry& g, const BeamDirection& observe, const BeamDirection& beam);

/// Azimuth-array factor |a_az^H a_az|^2 (not normalized).
double azimuth_factor(const ArrayGeometry& g, const BeamDirection& observe, const BeamDirection& beam);

/// Elevation-array factor |a_el^H a_el|^2 (not normalized).
double elevation_factor(const ArrayGeometry& g, double observe_elevation, double beam_elevation);

/// Upper bound on the gain toward elevation `phi` over all beams with
/// elevation in [phi_m, pi/2) and any azimuth. Non-increasing in phi_m.
///
/// Three regimes: saturated (phi_m <= phi), main lobe (the exact gain at
/// (0, phi_m) while sin(phi_m) is within 1/n_el of sin(phi)), and the
/// sidelobe envelope (n_az/n_el) / sin^2(pi (sin phi_m - sin phi) / 2).
/// The bound holds for phi >= 0, the only regime produced by a base
/// station mounted above the radar; far above the horizon the
/// half-wavelength grating lobe at sin-offset 2 breaks the envelope.
double max_gain_bound(const ArrayGeometry& g, double phi, double phi_m);

}  // namespace specshare
