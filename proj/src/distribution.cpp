#include "sshlab/distribution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sshlab/errors.hpp"

namespace sshlab {

double FlatDistribution::half_width() const { return std::numbers::sqrt3 * gamma; }

void FlatDistribution::validate() const {
  if (!(gamma >= 0.0)) throw std::invalid_argument("flat distribution: gamma must be >= 0");
}

DisorderDensity FlatDistribution::deviation_density() const {
  validate();
  if (gamma == 0.0) throw DomainError("flat distribution with gamma = 0 has no density");
  const double h = half_width();
  const double height = 1.0 / (2.0 * h);
  return DisorderDensity{[h, height](double eps) { return std::abs(eps) <= h ? height : 0.0; },
                         -h, h, {}};
}

}  // namespace sshlab
