#include "specshare/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace specshare
{
namespace
{

struct Panel
{
  double value;
  double error;
  double l1;
};

Panel gk_panel(const std::function<double(double)>& f, double a, double b, double rel_tol, unsigned depth,
               std::size_t& count)
{
  auto counted = [&](double x) {
    ++count;
    return f(x);
  };
  double err = 0.0, l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(counted, a, b, depth, rel_tol, &err,
                                                                                 &l1);
  return {v, err, l1};
}

void check(const QuadratureResult& r, double l1, const QuadratureOptions& opt)
{
  if (!std::isfinite(r.value))
    throw ConvergenceError("quadrature produced a non-finite value");
  // Boost reports an error estimate that can undershoot the true error by a
  // little; allow a small safety factor before declaring failure.
  const double allowed = std::max(opt.abs_tol, 10.0 * opt.rel_tol * l1);
  if (r.error > allowed && r.error > 64 * std::numeric_limits<double>::epsilon() * l1)
    throw ConvergenceError("quadrature did not converge: error " + std::to_string(r.error) + " exceeds "
                           + std::to_string(allowed));
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt)
{
  QuadratureResult r;
  if (a == b)
    return r;
  const Panel p = gk_panel(f, a, b, opt.rel_tol, opt.max_depth, r.evaluations);
  r.value = p.value;
  r.error = p.error;
  check(r, p.l1, opt);
  return r;
}

QuadratureResult integrate_panels(const std::function<double(double)>& f, std::span<const double> breakpoints,
                                  const QuadratureOptions& opt)
{
  if (breakpoints.size() < 2)
    throw std::invalid_argument("integrate_panels: need at least two breakpoints");
  QuadratureResult r;
  NeumaierSum value, error, l1;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
  {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b >= a))
      throw std::invalid_argument("integrate_panels: breakpoints must be non-decreasing");
    if (a == b)
      continue;
    const Panel p = gk_panel(f, a, b, opt.rel_tol, opt.max_depth, r.evaluations);
    value.add(p.value);
    error.add(p.error);
    l1.add(p.l1);
  }
  r.value = value.value();
  r.error = error.value();
  check(r, l1.value(), opt);
  return r;
}

}  // namespace specshare
