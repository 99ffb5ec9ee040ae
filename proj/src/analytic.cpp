#include "sshlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sshlab/errors.hpp"
#include "sshlab/quadrature.hpp"
#include "sshlab/special.hpp"

namespace sshlab {

namespace {

// Panel boundaries: support ends, user breakpoints, and the log singularity
// at eps = -u when it falls inside.
std::vector<double> panels(const DisorderDensity& density, double u) {
  std::vector<double> pts{density.lower, density.upper};
  for (double b : density.breakpoints)
    if (b > density.lower && b < density.upper) pts.push_back(b);
  if (-u > density.lower && -u < density.upper) pts.push_back(-u);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

void check_density(const DisorderDensity& density, double u) {
  if (u == 0.0) throw DomainError("cumulants need u != 0");
  if (!(density.upper > density.lower)) throw DomainError("density support is empty");
  const auto pts = panels(density, u);
  const double norm = integrate_panels(density.pdf, pts, 1e-12).value;
  if (std::abs(norm - 1.0) > 1e-8) throw DomainError("density is not normalized");
}

double log_moment(const DisorderDensity& density, double u, int power) {
  const auto pts = panels(density, u);
  auto integrand = [&](double eps) {
    const double p = density.pdf(eps);
    if (p == 0.0) return 0.0;
    const double l = std::log(std::abs(1.0 + eps / u));
    return (power == 1 ? l : l * l) * p;
  };
  return integrate_panels(integrand, pts, kCumulantTolerance, 20000).value;
}

}  // namespace

double z1_quadrature(const DisorderDensity& density, double u) {
  check_density(density, u);
  return log_moment(density, u, 1);
}

double z1_quadrature(const FlatDistribution& dist) {
  dist.validate();
  if (dist.gamma == 0.0) return 0.0;
  return z1_quadrature(dist.deviation_density(), dist.u);
}

double z2_quadrature(const DisorderDensity& density, double u) {
  check_density(density, u);
  const double z1 = log_moment(density, u, 1);
  return std::max(0.0, log_moment(density, u, 2) - z1 * z1);
}

double z2_quadrature(const FlatDistribution& dist) {
  dist.validate();
  if (dist.gamma == 0.0) return 0.0;
  return z2_quadrature(dist.deviation_density(), dist.u);
}

FlatZ1 z1_flat_closed_form(double gamma, double u) {
  if (!(gamma >= 0.0)) throw DomainError("z1_flat_closed_form: gamma must be >= 0");
  if (u == 0.0) throw DomainError("z1_flat_closed_form: u must be nonzero");
  const double a = std::numbers::sqrt3 * gamma / std::abs(u);
  if (a < 0.1) {
    // -sum_m a^{2m} / (2m (2m + 1))
    const double a2 = a * a;
    double power = a2;
    double sum = 0.0;
    for (int m = 1; m < 40; ++m) {
      const double term = power / (2.0 * m * (2.0 * m + 1.0));
      sum += term;
      if (term < 1e-18 * sum) break;
      power *= a2;
    }
    return FlatZ1{-sum, false};
  }
  if (a == 1.0) return FlatZ1{-1.0 + std::numbers::ln2, true};
  // Same expression regrouped as [(1+a) ln(1+a) - (1-a) ln|1-a|] / 2a - 1,
  // which stays finite as a -> 1.
  const double value =
      -1.0 + ((1.0 + a) * std::log1p(a) - (1.0 - a) * std::log(std::abs(1.0 - a))) / (2.0 * a);
  return FlatZ1{value, false};
}

Cumulants cumulants(const FlatDistribution& dist, CumulantMethod method) {
  dist.validate();
  if (dist.u == 0.0) throw DomainError("cumulants need u != 0");
  if (dist.gamma == 0.0) return Cumulants{0.0, 0.0, method};
  switch (method) {
    case CumulantMethod::Quadrature:
      return Cumulants{z1_quadrature(dist), z2_quadrature(dist), method};
    case CumulantMethod::FlatClosedForm:
      return Cumulants{z1_flat_closed_form(dist.gamma, dist.u).value, z2_quadrature(dist), method};
    case CumulantMethod::SmallGammaExpansion: {
      const double r2 = dist.gamma * dist.gamma / (dist.u * dist.u);
      return Cumulants{-0.5 * r2, r2, method};
    }
  }
  throw std::invalid_argument("unknown cumulant method");
}

double mean_nu_from_cumulants(std::size_t N, double u, double w, const Cumulants& c) {
  if (N == 0) throw std::invalid_argument("mean_nu: N must be positive");
  if (u == 0.0 || w == 0.0) throw DomainError("mean_nu: u and w must be nonzero");
  const double drift = std::log(std::abs(u / w)) + c.z1;
  if (c.z2 == 0.0) {
    if (drift == 0.0) throw DomainError("critical, undefined: z2 == 0 at the phase boundary");
    return drift < 0.0 ? 1.0 : 0.0;
  }
  const double x = std::sqrt(static_cast<double>(N)) * drift / std::sqrt(2.0 * c.z2);
  return 0.5 * sshlab::erfc(x);
}

double mean_nu_analytic(std::size_t N, double u, double w, double gamma) {
  return mean_nu_from_cumulants(N, u, w, cumulants(FlatDistribution{gamma, u}));
}

double critical_w(double u, double gamma) {
  return u * std::exp(z1_flat_closed_form(gamma, u).value);
}

double critical_gamma_weak(double u, double w) {
  if (!(u > 0.0 && w > 0.0)) throw DomainError("critical_gamma_weak: needs u > 0 and w > 0");
  if (w > u) throw DomainError("critical_gamma_weak: no disorder-driven transition for w > u");
  return std::sqrt(2.0 * u * (u - w));
}

double critical_gamma(double u, double w, double lo, double hi, double tol) {
  auto excess = [&](double gamma) { return mean_nu_analytic(1, u, w, gamma) - 0.5; };
  double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0))
    throw DomainError("critical_gamma: <nu> - 1/2 does not change sign on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = excess(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double variance_nu(std::size_t N, double u, double w, double gamma, VarianceMode mode) {
  if (mode == VarianceMode::General) {
    const double p = mean_nu_analytic(N, u, w, gamma);
    return p * (1.0 - p);
  }
  if (u == 0.0) throw DomainError("variance_nu: u must be nonzero");
  if (gamma == 0.0) {
    if (u == w) throw DomainError("critical, undefined: gamma == 0 at u == w");
    return 0.0;
  }
  const double x =
      std::sqrt(0.5 * static_cast<double>(N)) * ((u - w) / gamma - gamma / (2.0 * u));
  // 1 - erf^2 = erfc(|x|) (2 - erfc(|x|)), accurate in the tails.
  const double c = sshlab::erfc(std::abs(x));
  return 0.25 * c * (2.0 - c);
}

double fluctuation_width(double u, std::size_t N) {
  if (N == 0) throw std::invalid_argument("fluctuation_width: N must be positive");
  return std::abs(u) / std::sqrt(static_cast<double>(N));
}

}  // namespace sshlab
