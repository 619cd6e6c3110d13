#pragma once

#include <cstddef>
#include <span>

namespace packlab {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::size_t n = 0;
};

/// Ordinary least squares y = intercept + slope x. The slope standard error
/// uses the residual variance with n - 2 degrees of freedom (0 when n <= 2).
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace packlab
