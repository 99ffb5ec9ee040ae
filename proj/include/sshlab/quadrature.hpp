#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace sshlab {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b], bisecting the interval
/// with the largest |K15 - G7| until the summed estimate drops below abs_tol.
/// Endpoints are never sampled, so integrable endpoint singularities are
/// fine. Throws ConvergenceError (with the achieved estimate in the message)
/// when max_intervals is reached first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, std::size_t max_intervals = 4000);

/// Same, over consecutive panels [points[i], points[i+1]]; the tolerance is
/// shared across panels.
QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> points, double abs_tol,
                                  std::size_t max_intervals = 4000);

}  // namespace sshlab
