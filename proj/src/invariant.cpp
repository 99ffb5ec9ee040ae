#include "sshlab/invariant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sshlab/errors.hpp"

namespace sshlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// det h(phi) / s for a positive s chosen so neither term overflows. The
// winding number does not depend on s.
class ClosedFormDeterminant {
 public:
  ClosedFormDeterminant(const Realization& r, double w) {
    const std::size_t n = r.size();
    double log_product = 0.0;
    bool negative = false;
    for (double c : r.couplings) {
      if (c == 0.0) {
        log_product = -std::numeric_limits<double>::infinity();
        break;
      }
      log_product += std::log(std::abs(c));
      if (c < 0.0) negative = !negative;
    }
    const double log_corner = w == 0.0 ? -std::numeric_limits<double>::infinity()
                                       : static_cast<double>(n) * std::log(std::abs(w));
    const double shift = std::max(log_product, log_corner);
    product_ = (negative ? -1.0 : 1.0) * std::exp(log_product - shift);
    // (-1)^(N+1) sign(w)^N
    double sign = (n % 2 == 1) ? 1.0 : -1.0;
    if (w < 0.0 && n % 2 == 1) sign = -sign;
    corner_ = sign * std::exp(log_corner - shift);
  }

  std::complex<double> operator()(double phi) const {
    return product_ + corner_ * std::polar(1.0, phi);
  }

 private:
  double product_ = 0.0;
  double corner_ = 0.0;
};

}  // namespace

WindingResult winding_integral(const Realization& r, double w, std::size_t m_phi,
                               DeterminantRoute route) {
  if (r.size() == 0) throw std::invalid_argument("winding_integral: empty realization");
  if (m_phi < kMinPhaseSamples)
    throw std::invalid_argument("winding_integral: need at least 16 phase samples");

  const ClosedFormDeterminant closed(r, w);
  double lu_scale = std::abs(w);
  if (lu_scale == 0.0)
    for (double c : r.couplings) lu_scale = std::max(lu_scale, std::abs(c));
  if (lu_scale == 0.0) lu_scale = 1.0;

  auto det_at = [&](double phi) {
    std::complex<double> d = route == DeterminantRoute::ClosedForm
                                 ? closed(phi)
                                 : FluxMatrix(r.couplings, w, phi).determinant_lu(lu_scale);
    if (!(std::abs(d) >= 1e-300))
      throw CriticalRealization("critical realization: det h(phi) vanishes at phi=" +
                                std::to_string(phi));
    return d;
  };

  const std::complex<double> start = det_at(0.0);
  for (std::size_t samples = m_phi; samples <= kMaxPhaseSamples; samples *= 2) {
    double total = 0.0;
    bool resolved = true;
    std::complex<double> prev = start;
    for (std::size_t m = 1; m <= samples; ++m) {
      const std::complex<double> cur =
          m == samples ? start : det_at(kTwoPi * static_cast<double>(m) / static_cast<double>(samples));
      const double step = std::arg(cur / prev);
      if (std::abs(step) >= std::numbers::pi / 2) {
        resolved = false;
        break;
      }
      total += step;
      prev = cur;
    }
    if (!resolved) continue;

    const double turns = total / kTwoPi;
    const double nu = std::round(turns);
    if (std::abs(turns - nu) > 1e-6 || (nu != 0.0 && nu != 1.0))
      throw ConvergenceError("winding_integral: non-integer or out-of-range winding " +
                             std::to_string(turns));
    return WindingResult{static_cast<int>(nu), samples, total};
  }
  throw UnresolvedWinding("unresolved winding: phase increments exceed pi/2 at " +
                          std::to_string(kMaxPhaseSamples) + " samples");
}

XiValue log_xi(const Realization& r, const ChainParams& params) {
  if (params.u == 0.0 || params.w == 0.0)
    throw DomainError("log_xi: u and w must be nonzero");
  if (r.size() != params.N) throw std::invalid_argument("log_xi: realization length != N");
  XiValue out;
  double sum = 0.0;
  for (double c : r.couplings) {
    if (c == 0.0) {
      out.zero_coupling = true;
      out.log_xi = -std::numeric_limits<double>::infinity();
      return out;
    }
    sum += std::log(std::abs(c / params.u));
  }
  out.log_xi = static_cast<double>(params.N) * std::log(std::abs(params.u / params.w)) + sum;
  return out;
}

ClosedFormWinding winding_closed_form(const Realization& r, const ChainParams& params) {
  const XiValue xi = log_xi(r, params);
  if (xi.log_xi == 0.0) throw CriticalRealization("critical realization: xi == 1 exactly");
  return ClosedFormWinding{xi.log_xi < 0.0 ? 1 : 0, xi};
}

double wilson_loop_phase(double u, double w, std::size_t m_k) {
  if (m_k < 64) throw std::invalid_argument("wilson_loop_phase: need at least 64 momenta");
  if (std::abs(u) == std::abs(w)) throw DomainError("gapless: |u| == |w|");

  // Lower-band eigenvector of [[0, conj(q)], [q, 0]] with q = u + w e^{ik}:
  // (-conj(q)/|q|, 1) / sqrt(2).
  auto lower_band = [&](double k) {
    const std::complex<double> q = u + w * std::polar(1.0, k);
    const std::complex<double> a = -std::conj(q) / std::abs(q);
    return std::array<std::complex<double>, 2>{a / std::numbers::sqrt2,
                                               std::complex<double>(1.0 / std::numbers::sqrt2)};
  };

  const auto first = lower_band(-std::numbers::pi);
  auto prev = first;
  std::complex<double> loop = 1.0;
  for (std::size_t j = 1; j <= m_k; ++j) {
    const auto cur = j == m_k ? first
                              : lower_band(-std::numbers::pi +
                                           kTwoPi * static_cast<double>(j) / static_cast<double>(m_k));
    const std::complex<double> overlap = std::conj(prev[0]) * cur[0] + std::conj(prev[1]) * cur[1];
    loop *= overlap / std::abs(overlap);
    prev = cur;
  }
  return -std::arg(loop);
}

int zak_phase_clean(double u, double w, std::size_t m_k) {
  const double phase = wilson_loop_phase(u, w, m_k);
  const long turns = std::lround(phase / std::numbers::pi);
  return static_cast<int>(((turns % 2) + 2) % 2);
}

}  // namespace sshlab
