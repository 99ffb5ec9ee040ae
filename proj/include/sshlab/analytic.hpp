#pragma once

// Closed-form predictions for the disorder-averaged invariant.
//
// With eta = sum ln|1 + du_i/u| approximately normal (mean N z1, variance
// N z2), the averaged invariant is
//   <nu> = 1/2 erfc( sqrt(N) (ln|u/w| + z1) / sqrt(2 z2) ),
// and the phase boundary <nu> = 1/2 sits at w0 = u exp(z1).
//
// The integrands use ln|1 + eps/u| throughout, so supports that cross
// eps = -u (negative couplings) are handled.

#include <cstddef>

#include "sshlab/distribution.hpp"

namespace sshlab {

enum class CumulantMethod { Quadrature, FlatClosedForm, SmallGammaExpansion };

struct Cumulants {
  double z1 = 0.0;
  double z2 = 0.0;
  CumulantMethod method = CumulantMethod::Quadrature;
};

inline constexpr double kCumulantTolerance = 1e-10;

/// Integral of ln|1 + eps/u| p(eps), split at eps = -u. Throws DomainError
/// for u == 0 or a density whose integral differs from 1 by more than 1e-8.
double z1_quadrature(const DisorderDensity& density, double u);
double z1_quadrature(const FlatDistribution& dist);

/// Integral of ln^2|1 + eps/u| p(eps) minus z1^2.
double z2_quadrature(const DisorderDensity& density, double u);
double z2_quadrature(const FlatDistribution& dist);

struct FlatZ1 {
  double value = 0.0;
  bool removable_limit = false;  // sqrt(3) gamma == |u|; limit value -1 + ln 2 used
};

/// z1 for the flat distribution:
///   -1 + (u / 2 sqrt(3) gamma) ln((u + sqrt(3) gamma)/|u - sqrt(3) gamma|)
///      + 1/2 ln|1 - 3 gamma^2/u^2|.
/// Small gamma/u switches to the even power series to avoid cancellation.
FlatZ1 z1_flat_closed_form(double gamma, double u);

Cumulants cumulants(const FlatDistribution& dist,
                    CumulantMethod method = CumulantMethod::FlatClosedForm);

/// <nu> from given cumulants. gamma == 0 is signalled by z2 == 0 and gives the
/// step [|w| > |u|]; DomainError when z2 == 0 and the step is undefined.
double mean_nu_from_cumulants(std::size_t N, double u, double w, const Cumulants& c);

/// <nu> for the flat distribution (closed-form z1, quadrature z2).
double mean_nu_analytic(std::size_t N, double u, double w, double gamma);

/// w0 = u exp(z1(gamma/u)).
double critical_w(double u, double gamma);

/// sqrt(2u(u - w)) for u >= w > 0; DomainError for w > u.
double critical_gamma_weak(double u, double w);

/// gamma in [lo, hi] with <nu>(gamma) = 1/2, by bisection on
/// mean_nu_analytic - 1/2. Throws DomainError when the bracket has no sign change.
double critical_gamma(double u, double w, double lo, double hi, double tol = 1e-12);

enum class VarianceMode { General, WeakLimit };

/// Finite-size variance of nu. General: <nu>(1 - <nu>). WeakLimit:
/// 1/4 (1 - erf^2[sqrt(N/2) ((u - w)/gamma - gamma/2u)]).
double variance_nu(std::size_t N, double u, double w, double gamma,
                   VarianceMode mode = VarianceMode::General);

/// Width of the fluctuation region, |u| / sqrt(N).
double fluctuation_width(double u, std::size_t N);

}  // namespace sshlab
