#pragma once

// Eigensolvers for the chain matrices.
//
//   eigenvalues_tridiagonal  implicit-shift QL on (diagonal, off-diagonal)
//   eigenvalues_dense        Householder tridiagonalization, then QL
//   eigenvalues_banded       Givens band reduction (bulge chasing), then QL
//   eigenvalues              picks one of the above from the storage and
//                            bandwidth; ring matrices are reordered
//                            zig-zag so their half-bandwidth is 2
//
// All of them resolve eigenvalues to about machine epsilon times the matrix
// norm and are deterministic.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sshlab/model.hpp"

namespace sshlab {

struct SpectralResult {
  std::vector<double> eigenvalues;  // ascending
  double gap = 0.0;                 // 2 min_j |E_j|
  std::array<std::size_t, 2> min_pair_indices{0, 0};
};

/// Sorts, then fills gap and the (-E_min, +E_min) index pair.
SpectralResult make_spectral_result(std::vector<double> eigenvalues);

/// In-place implicit QL on a symmetric tridiagonal matrix; off_diagonal[i]
/// couples i and i+1. On return `diagonal` holds the (unsorted) eigenvalues.
/// Throws ConvergenceError after 50 sweeps on a single eigenvalue.
void tridiagonal_ql(std::span<double> diagonal, std::span<double> off_diagonal);

SpectralResult eigenvalues_tridiagonal(const RealSymmetricMatrix& m);
SpectralResult eigenvalues_dense(const RealSymmetricMatrix& m);
/// Requires m.half_bandwidth() <= half_bandwidth.
SpectralResult eigenvalues_banded(const RealSymmetricMatrix& m, std::size_t half_bandwidth);
SpectralResult eigenvalues(const RealSymmetricMatrix& m);

/// Ordering 0, 1, n-1, 2, n-2, 3, ... that maps a ring onto a band of
/// half-width 2.
std::vector<std::size_t> zigzag_order(std::size_t n);
RealSymmetricMatrix permute(const RealSymmetricMatrix& m, std::span<const std::size_t> order);

enum class Which { Plus, Minus };

struct NearZeroPair {
  std::vector<double> plus;   // unit norm, Ritz value closest to +E_min
  std::vector<double> minus;  // unit norm, orthogonal to plus
  double energy_plus = 0.0;
  double energy_minus = 0.0;
  double max_residual = 0.0;  // max ||M v - E v|| over the pair
  bool degenerate = false;    // 2 E_min not resolved from zero at 1e-13 ||M||
};

/// Both eigenvectors of the +-E_min pair by two-vector inverse iteration with
/// Gram-Schmidt and a 2x2 Rayleigh-Ritz step, so a near-degenerate pair comes
/// back as an orthonormal basis of its subspace. Throws ConvergenceError when
/// the residual stalls above 1e-10 ||M||.
NearZeroPair eigenpair_near_zero(const RealSymmetricMatrix& m, const SpectralResult& spectrum);

std::vector<double> eigenvector_near_zero(const RealSymmetricMatrix& m,
                                          const SpectralResult& spectrum, Which which);

}  // namespace sshlab
