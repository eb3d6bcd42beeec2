#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

#include "specshare/errors.hpp"

namespace specshare
{

/// Compensated (Neumaier) running sum.
class NeumaierSum
{
public:
  void add(double x)
  {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadratureOptions
{
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  unsigned max_depth = 18;
};

struct QuadratureResult
{
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive 15/31-point Gauss-Kronrod on [a, b]; b may be +infinity.
/// Throws ConvergenceError when the error estimate misses the tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opt = {});

/// Integrates piecewise over consecutive breakpoints (sorted, at least two)
/// and sums the panels with compensation. The tolerance applies to the total.
QuadratureResult integrate_panels(const std::function<double(double)>& f, std::span<const double> breakpoints,
                                  const QuadratureOptions& opt = {});

}  // namespace specshare
