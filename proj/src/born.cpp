#include "sshlab/born.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sshlab/analytic.hpp"
#include "sshlab/errors.hpp"
#include "sshlab/quadrature.hpp"

namespace sshlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxIntervals = 20000;

// Points center +- width * 4^j inside (0, pi), from well inside the peak out
// to the scale of the zone.
void refine_around(std::vector<double>& pts, double center, double width) {
  if (!(width > 0.0) || !std::isfinite(width)) return;
  for (int j = -3; j < 40; ++j) {
    const double d = width * std::pow(4.0, j);
    if (d > 0.5 * kPi) break;
    for (double x : {center - d, center + d})
      if (x > 0.0 && x < kPi) pts.push_back(x);
  }
  if (center > 0.0 && center < kPi) pts.push_back(center);
}

std::vector<double> mesh(const BornParams& p) {
  std::vector<double> pts{0.0, kPi};
  const double uw = std::abs(p.u * p.w);
  if (uw > 0.0) {
    // Band minimum |u - w| sits at k = pi for uw > 0, at k = 0 otherwise.
    const double edge = p.u * p.w > 0.0 ? kPi : 0.0;
    const double dmin = std::abs(p.u) - std::abs(p.w);
    refine_around(pts, edge, std::sqrt((dmin * dmin + p.alpha * p.alpha) / uw));
    // On-shell momentum where eps_k = |omega|.
    if (p.omega != 0.0) {
      const double c = (p.omega * p.omega - p.u * p.u - p.w * p.w) / (2.0 * p.u * p.w);
      if (c > -1.0 && c < 1.0) {
        const double ks = std::acos(c);
        const double slope = uw * std::sin(ks) / std::abs(p.omega);
        const double width = std::max(p.alpha / slope, std::sqrt(2.0 * p.alpha * std::abs(p.omega) / uw));
        refine_around(pts, ks, width);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// (1/2pi) over [-pi, pi] of an even integrand = (1/pi) over [0, pi].
template <class F>
Complex zone_average(const BornParams& p, double abs_tol, F integrand) {
  p.validate();
  if (!(abs_tol > 0.0)) throw std::invalid_argument("born quadrature: abs_tol must be positive");
  const auto pts = mesh(p);
  const double part_tol = 0.5 * abs_tol * kPi;
  const auto re = integrate_panels([&](double k) { return integrand(k).real(); }, pts, part_tol,
                                   kMaxIntervals);
  const auto im = integrate_panels([&](double k) { return integrand(k).imag(); }, pts, part_tol,
                                   kMaxIntervals);
  return Complex(re.value, im.value) / kPi;
}

Complex eps_squared(double k, Complex u, double w) {
  const Complex x = u + w * std::cos(k);
  const double y = w * std::sin(k);
  return x * x + y * y;
}

}  // namespace

void BornParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("born: alpha must be positive");
  if (!(gamma >= 0.0)) throw std::invalid_argument("born: gamma must be >= 0");
}

Matrix2c bare_greens_function(double k, Complex z, Complex u, double w) {
  const Complex x = u + w * std::cos(k);
  const double y = w * std::sin(k);
  const Complex den = z * z - eps_squared(k, u, w);
  const Complex i(0.0, 1.0);
  return {{{z / den, (x - i * y) / den}, {(x + i * y) / den, z / den}}};
}

Matrix2c bare_greens_function(double k, const BornParams& p) {
  p.validate();
  return bare_greens_function(k, Complex(p.omega, p.alpha), p.u, p.w);
}

Complex f_quadrature(const BornParams& p, double abs_tol) {
  const Complex z(p.omega, p.alpha);
  return zone_average(p, abs_tol, [&](double k) { return z / (z * z - eps_squared(k, p.u, p.w)); });
}

Complex g_quadrature(const BornParams& p, double abs_tol) {
  const Complex z(p.omega, p.alpha);
  return zone_average(p, abs_tol, [&](double k) {
    return (p.u + p.w * std::cos(k)) / (z * z - eps_squared(k, p.u, p.w));
  });
}

Complex f_narrow_peak(double delta, double u, double alpha) {
  if (u == 0.0) throw DomainError("f_narrow_peak: u must be nonzero");
  return Complex(0.0, -alpha / (2.0 * u * std::hypot(delta, alpha)));
}

Complex g_narrow_peak(double delta, double u, double alpha) {
  if (u == 0.0) throw DomainError("g_narrow_peak: u must be nonzero");
  if (delta == 0.0 && alpha == 0.0) return 0.0;
  return -delta / (2.0 * u * std::hypot(delta, alpha));
}

BornFunctions born_functions(const BornParams& p, BornMethod method) {
  p.validate();
  if (method == BornMethod::NarrowPeak)
    return {f_narrow_peak(p.delta(), p.u, p.alpha), g_narrow_peak(p.delta(), p.u, p.alpha), method,
            0.0};
  return {f_quadrature(p), g_quadrature(p), method, kBornTolerance};
}

Matrix2c averaged_greens_function(double k, const BornParams& p, const BornFunctions& fg) {
  p.validate();
  const double g2 = p.gamma * p.gamma;
  const Complex z = Complex(p.omega, p.alpha) - g2 * fg.f;
  return bare_greens_function(k, z, p.u + g2 * fg.g, p.w);
}

Matrix2c averaged_greens_function(double k, const BornParams& p, BornMethod method) {
  if (p.gamma == 0.0) return bare_greens_function(k, p);
  return averaged_greens_function(k, p, born_functions(p, method));
}

double midgap_dos(double delta, double u, double gamma, double alpha) {
  if (!(delta > 0.0)) throw DomainError("midgap_dos: formula holds only for delta > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("midgap_dos: alpha must be positive");
  if (u == 0.0) throw DomainError("midgap_dos: u must be nonzero");
  const double shift = gamma * gamma / (2.0 * u);
  const double boost = 1.0 + shift / delta;
  return alpha * boost / (2.0 * kPi * u * std::hypot(delta - shift, alpha * boost));
}

double band_touch_gamma(double u, double w) { return critical_gamma_weak(u, w); }

}  // namespace sshlab
