#include "sshlab/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sshlab {
namespace {

constexpr double kSeriesCutoff = 2.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// All terms share the sign of x, so no cancellation.
double erf_series(double x) {
  if (x < 0.0) return -erf_series(-x);
  const double two_x2 = 2.0 * x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= two_x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < kEps * 0.25 * sum) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x) * sum;
}

// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated by modified Lentz. Requires x >= kSeriesCutoff.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  if (x > 27.0) return 0.0;  // below the smallest subnormal
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 0.5 * kEps) break;
  }
  return std::exp(-x * x) / std::sqrt(std::numbers::pi) / f;
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  if (ax < kSeriesCutoff) return erf_series(x);
  const double value = 1.0 - erfc_continued_fraction(ax);
  return x < 0.0 ? -value : value;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x >= kSeriesCutoff) return erfc_continued_fraction(x);
  if (x <= -kSeriesCutoff) return 2.0 - erfc_continued_fraction(-x);
  return 1.0 - erf_series(x);
}

}  // namespace sshlab
