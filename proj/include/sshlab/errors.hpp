#pragma once

#include <stdexcept>
#include <string>

namespace sshlab {

/// Base class for every numerical failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Realization sits exactly on the phase boundary (xi == 1 or det h == 0).
class CriticalRealization : public Error {
 public:
  using Error::Error;
};

/// Phase-increment guard could not be satisfied within the sample cap.
class UnresolvedWinding : public Error {
 public:
  using Error::Error;
};

/// Iterative kernel (QL sweep, inverse iteration, quadrature) did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the domain where a formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace sshlab
