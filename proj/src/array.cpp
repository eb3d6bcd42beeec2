#include "specshare/array.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace specshare
{

ArrayGeometry::ArrayGeometry(int az, int el, double height)
    : n_az(az), n_el(el), height_m(height)
{
  if (n_az < 1 || n_el < 1)
    throw std::invalid_argument("array element counts must be >= 1");
  if (!(height_m >= 0.0) || !std::isfinite(height_m))
    throw std::invalid_argument("array height must be finite and >= 0");
}

BeamDirection::BeamDirection(double azimuth, double elevation)
    : azimuth_rad(azimuth), elevation_rad(elevation)
{
  if (!(azimuth >= -pi / 2 && azimuth < pi / 2))
    throw std::invalid_argument("azimuth out of [-pi/2, pi/2): " + std::to_string(azimuth));
  if (!(elevation >= -pi / 2 && elevation <= pi / 2))
    throw std::invalid_argument("elevation out of [-pi/2, pi/2]: " + std::to_string(elevation));
}

BeamDirection BeamDirection::from_degrees(double azimuth_deg, double elevation_deg)
{
  return {deg_to_rad(azimuth_deg), deg_to_rad(elevation_deg)};
}

ComplexVector steering_vector(const ArrayGeometry& g, const BeamDirection& d)
{
  const double u_az = std::sin(d.azimuth_rad) * std::cos(d.elevation_rad);
  const double u_el = std::sin(d.elevation_rad);

  ComplexVector out(static_cast<std::size_t>(g.elements()));
  for (int m = 0; m < g.n_az; ++m)
  {
    for (int n = 0; n < g.n_el; ++n)
    {
      const double phase = -pi * (m * u_az + n * u_el);
      out[static_cast<std::size_t>(m * g.n_el + n)] = std::polar(1.0, phase);
    }
  }
  return out;
}

double dirichlet_ratio(int n, double x)
{
  const double s = std::sin(x);
  if (std::abs(s) < 1e-9)
    return static_cast<double>(n) * n;
  const double num = std::sin(n * x);
  return (num * num) / (s * s);
}

double azimuth_factor(const ArrayGeometry& g, const BeamDirection& observe, const BeamDirection& beam)
{
  const double delta = std::sin(observe.azimuth_rad) * std::cos(observe.elevation_rad)
                     - std::sin(beam.azimuth_rad) * std::cos(beam.elevation_rad);
  return dirichlet_ratio(g.n_az, 0.5 * pi * delta);
}

double elevation_factor(const ArrayGeometry& g, double observe_elevation, double beam_elevation)
{
  const double delta = std::sin(observe_elevation) - std::sin(beam_elevation);
  return dirichlet_ratio(g.n_el, 0.5 * pi * delta);
}

double normalized_gain(const ArrayGeometry& g, const BeamDirection& observe, const BeamDirection& beam)
{
  return azimuth_factor(g, observe, beam) * elevation_factor(g, observe.elevation_rad, beam.elevation_rad)
       / g.elements();
}

double max_gain_bound(const ArrayGeometry& g, double phi, double phi_m)
{
  if (!(phi >= -pi / 2 && phi < pi / 2))
    throw std::invalid_argument("max_gain_bound: phi out of [-pi/2, pi/2)");
  if (!(phi_m >= 0.0 && phi_m <= pi / 2))
    throw std::invalid_argument("max_gain_bound: phi_m out of [0, pi/2]");

  if (phi_m <= phi)
    return static_cast<double>(g.elements());

  const double s = std::sin(phi);
  const double s_m = std::sin(phi_m);
  const double n_az = g.n_az;
  const double n_el = g.n_el;

  // Ties at the main-lobe edge take the exact gain.
  if (s_m <= (1.0 + n_el * s) / n_el)
    return n_az * dirichlet_ratio(g.n_el, 0.5 * pi * (s - s_m)) / n_el;

  const double sl = std::sin(0.5 * pi * (s_m - s));
  return (n_az / n_el) / (sl * sl);
}

}  // namespace specshare
