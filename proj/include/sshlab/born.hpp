#pragma once

// First-Born treatment of the disorder-averaged Green function.
//
// The averaged self-energy is gamma^2 (f sigma_0 + g sigma_x), where f and g
// are Brillouin-zone averages of the bare resolvent; they shift
// omega -> omega - gamma^2 f and u -> u + gamma^2 g. Near weak dimerization
// both integrals are dominated by a Lorentzian at k = pi, which gives the
// "narrow-peak" forms used for the midgap density of states.

#include <array>
#include <complex>

namespace sshlab {

using Complex = std::complex<double>;
using Matrix2c = std::array<std::array<Complex, 2>, 2>;

inline constexpr double kDefaultAlphaOverU = 1e-6;
inline constexpr double kBornTolerance = 1e-9;

struct BornParams {
  double u = 1.0;
  double w = 1.0;
  double gamma = 0.0;
  double alpha = kDefaultAlphaOverU;  // positive regulator, omega -> omega + i alpha
  double omega = 0.0;

  double delta() const { return u - w; }
  /// Throws std::invalid_argument unless alpha > 0 and gamma >= 0.
  void validate() const;
};

enum class BornMethod { Quadrature, NarrowPeak };

struct BornFunctions {
  Complex f;
  Complex g;
  BornMethod method = BornMethod::Quadrature;
  double error_estimate = 0.0;  // summed quadrature estimate; 0 for NarrowPeak
};

/// [z sigma_0 + (u + w cos k) sigma_x + w sin k sigma_y] / (z^2 - eps_k^2),
/// z = omega + i alpha.
Matrix2c bare_greens_function(double k, const BornParams& p);

/// Same with complex frequency z and (possibly complex) intra-dimer coupling.
Matrix2c bare_greens_function(double k, Complex z, Complex u, double w);

/// Brillouin-zone averages of z / (z^2 - eps_k^2) and
/// (u + w cos k) / (z^2 - eps_k^2). The mesh is refined geometrically around
/// k = pi and around the on-shell momentum |eps_k| = |omega|. Throws
/// ConvergenceError when abs_tol is not reached.
Complex f_quadrature(const BornParams& p, double abs_tol = kBornTolerance);
Complex g_quadrature(const BornParams& p, double abs_tol = kBornTolerance);

/// -i alpha / (2u sqrt(delta^2 + alpha^2)); midgap (omega = 0) only.
Complex f_narrow_peak(double delta, double u, double alpha);
/// -delta / (2u sqrt(delta^2 + alpha^2)); midgap (omega = 0) only.
Complex g_narrow_peak(double delta, double u, double alpha);

/// NarrowPeak evaluates the midgap forms and ignores p.omega.
BornFunctions born_functions(const BornParams& p, BornMethod method);

/// Bare Green function at omega - gamma^2 f and u + gamma^2 g.
Matrix2c averaged_greens_function(double k, const BornParams& p, const BornFunctions& fg);
Matrix2c averaged_greens_function(double k, const BornParams& p,
                                  BornMethod method = BornMethod::NarrowPeak);

/// rho(0) = alpha (1 + gamma^2/2u delta) /
///          (2 pi u sqrt[(delta - gamma^2/2u)^2 + alpha^2 (1 + gamma^2/2u delta)^2]).
/// DomainError for delta <= 0 (the formula covers only that branch).
double midgap_dos(double delta, double u, double gamma, double alpha);

/// Disorder strength where delta = gamma^2 / 2u; identical to critical_gamma_weak.
double band_touch_gamma(double u, double w);

}  // namespace sshlab
