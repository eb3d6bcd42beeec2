#pragma once

#include <stdexcept>
#include <string>

namespace specshare
{

/// A numerical procedure failed to reach its tolerance or produced values
/// outside its validity range (insufficient series terms, quadrature budget
/// exhausted). The CLI maps this to exit code 3.
class ConvergenceError : public std::runtime_error
{
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace specshare
