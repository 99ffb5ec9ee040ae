#pragma once

#include <functional>
#include <vector>

namespace sshlab {

/// Density p(eps) of the deviations eps = u_i - u on a finite support.
/// Breakpoints mark interior kinks or jumps the quadrature should not
/// straddle.
struct DisorderDensity {
  std::function<double(double)> pdf;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> breakpoints;
};

/// Couplings uniform on [u - sqrt(3) gamma, u + sqrt(3) gamma]; variance gamma^2.
struct FlatDistribution {
  double gamma = 0.0;
  double u = 1.0;

  double half_width() const;
  double lower() const { return u - half_width(); }
  double upper() const { return u + half_width(); }

  /// Throws std::invalid_argument for negative gamma.
  void validate() const;
  /// Requires gamma > 0.
  DisorderDensity deviation_density() const;
};

}  // namespace sshlab
