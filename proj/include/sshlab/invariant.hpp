#pragma once

// Z2 invariant of a chain realization, three ways:
//   * winding of det h(phi) as the flux twist runs over [0, 2pi),
//   * the product criterion nu = [xi < 1] with xi = prod|u_i| / |w|^N,
//   * the Wilson-loop Zak phase of the clean Bloch Hamiltonian.

#include <cstddef>

#include "sshlab/model.hpp"

namespace sshlab {

enum class DeterminantRoute {
  ClosedForm,  // prod(u_i) + (-1)^(N+1) w^N e^{i phi}, evaluated in log space
  LU,          // partial-pivoting LU of the dense flux matrix
};

struct WindingResult {
  int nu = 0;
  std::size_t phase_samples = 0;  // grid size that passed the increment guard
  double total_phase = 0.0;       // summed principal-branch arg increments
};

struct XiValue {
  double log_xi = 0.0;
  bool zero_coupling = false;  // some u_i == 0, log_xi is -inf
};

struct ClosedFormWinding {
  int nu = 0;
  XiValue xi;
};

inline constexpr std::size_t kMinPhaseSamples = 16;
inline constexpr std::size_t kMaxPhaseSamples = 4096;

/// Winding number of det h(phi) on the uniform grid phi_m = 2 pi m / M.
/// M starts at m_phi and doubles whenever an increment reaches pi/2.
/// Throws CriticalRealization if |det| < 1e-300 at a sample and
/// UnresolvedWinding once M would exceed kMaxPhaseSamples.
WindingResult winding_integral(const Realization& r, double w,
                               std::size_t m_phi = kMinPhaseSamples,
                               DeterminantRoute route = DeterminantRoute::ClosedForm);

/// log xi = N ln|u/w| + sum ln|u_i/u|, accumulated in log space.
XiValue log_xi(const Realization& r, const ChainParams& params);

/// theta(1 - xi). Throws CriticalRealization on log xi == 0 exactly and
/// DomainError when u or w vanish. A zero coupling yields nu = 1 with the
/// zero_coupling flag set.
ClosedFormWinding winding_closed_form(const Realization& r, const ChainParams& params);

/// Berry phase of the lower band from the Wilson loop over m_k momenta, in (-pi, pi].
double wilson_loop_phase(double u, double w, std::size_t m_k);

/// round(phi_Zak / pi) mod 2. Throws DomainError("gapless") when |u| == |w|.
int zak_phase_clean(double u, double w, std::size_t m_k = 256);

}  // namespace sshlab
