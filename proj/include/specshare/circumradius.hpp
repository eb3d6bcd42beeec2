#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "specshare/random.hpp"

namespace specshare
{

struct CircumradiusOptions
{
  int series_terms = 8;             // K_max
  int simplex_samples = 200'000;    // points per simplex dimension
  double diff_step = 1e-4;          // relative step in r for the central difference
  std::uint64_t seed = 0x5eed'c1c1; // randomization of the simplex point set
};

namespace detail
{
struct MuTable;
}

/// Distribution of the circumradius of the typical Poisson-Voronoi cell.
///
/// With mu = 4 pi lambda r^2 the CDF is a covering probability of the
/// circle of radius r,
///
///   F(r) = 1 - e^{-mu} + e^{-mu} sum_{k=1}^{K} (-mu)^k / k! zeta_k(mu),
///   zeta_k(mu) = E[ prod_i F(u_i) exp(mu sum_i int_0^{u_i} F(t) dt) ],
///
/// where u is uniform on the (k-1)-simplex and F(t) = sin^2(pi t) for
/// t <= 1/2, 1 above. zeta_k is estimated by randomized quasi-Monte Carlo and
/// its mu-derivative by a central difference in r with common points. The
/// density in mu does not depend on lambda, so one table serves every
/// intensity and results are exactly scale invariant.
class CircumradiusDistribution
{
public:
  explicit CircumradiusDistribution(double intensity, CircumradiusOptions options = {});

  [[nodiscard]] double intensity() const { return intensity_; }
  [[nodiscard]] const CircumradiusOptions& options() const { return options_; }

  [[nodiscard]] double pdf(double r) const;
  [[nodiscard]] double cdf(double r) const;
  [[nodiscard]] double quantile(double p) const;
  [[nodiscard]] double sample(Rng& rng) const;

  /// Integral of the truncated density before any renormalization.
  [[nodiscard]] double raw_normalization() const;
  [[nodiscard]] bool renormalized() const;

  /// Largest r with non-negligible density (upper end of the table).
  [[nodiscard]] double support_max() const;

  /// Tabulated density in mu = 4 pi lambda r^2 (dimensionless).
  [[nodiscard]] double density_mu(double mu) const;
  [[nodiscard]] double cdf_mu(double mu) const;

private:
  double intensity_;
  CircumradiusOptions options_;
  std::shared_ptr<const detail::MuTable> table_;
};

/// Convenience wrappers matching the distribution methods.
double circumradius_pdf(const CircumradiusDistribution& d, double r_c);
double circumradius_cdf(const CircumradiusDistribution& d, double r_c);

/// zeta_k(mu) estimated from the same point set the distribution uses.
double simplex_zeta(int k, double mu, const CircumradiusOptions& options = {});

/// Circumradii of interior cells from repeated tessellations of Poisson
/// patterns on disks. Throws std::invalid_argument on bad input and
/// std::runtime_error when the region cannot be sized.
std::vector<double> empirical_circumradius_sample(double intensity, std::size_t n_cells, std::uint64_t seed);

}  // namespace specshare
