#pragma once

namespace sshlab {

/// Error function, relative error below 1e-14 on the real line.
/// Power series e^{-x^2} sum (2x^2)^n x / (2n+1)!! for |x| < 2, continued
/// fraction for erfc beyond.
double erf(double x);

/// Complementary error function with full relative accuracy in the tail.
double erfc(double x);

}  // namespace sshlab
