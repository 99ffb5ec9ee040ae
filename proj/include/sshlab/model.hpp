#pragma once

// Single-particle matrices of the dimerized chain.
//
// Site ordering is (a_1, b_1, a_2, b_2, ..., a_N, b_N). The "u-bond" joins
// a_i and b_i and carries the random coupling u_i; the "w-bond" joins b_i and
// a_{i+1} and carries the uniform coupling w. Periodic chains add one w-bond
// between b_N and a_1.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sshlab {

enum class Boundary { Open, Periodic };

struct ChainParams {
  std::size_t N = 2;  // dimer count
  double u = 1.0;     // mean u-bond coupling
  double w = 1.0;     // w-bond coupling
  Boundary bc = Boundary::Open;

  /// Throws std::invalid_argument unless N >= 2.
  void validate() const;
};

/// One sampled vector of u-bond couplings plus the stream it came from.
struct Realization {
  std::vector<double> couplings;
  std::uint64_t origin_seed = 0;
  std::uint64_t origin_index = 0;

  std::size_t size() const { return couplings.size(); }
};

/// All couplings equal to params.u.
Realization clean_realization(const ChainParams& params);

/// Real symmetric matrix stored either as (diagonal, off-diagonal) or dense
/// row-major.
class RealSymmetricMatrix {
 public:
  static RealSymmetricMatrix tridiagonal(std::vector<double> diagonal,
                                         std::vector<double> off_diagonal);
  static RealSymmetricMatrix dense(std::size_t n, std::vector<double> row_major);

  std::size_t dimension() const { return n_; }
  bool is_tridiagonal() const { return tridiagonal_; }

  double operator()(std::size_t i, std::size_t j) const;

  // Tridiagonal storage only.
  std::span<const double> diagonal() const { return diagonal_; }
  std::span<const double> off_diagonal() const { return off_diagonal_; }

  // Dense storage only.
  std::span<const double> dense_data() const { return dense_; }

  RealSymmetricMatrix to_dense() const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// Max absolute row sum; equals the 1-norm for symmetric input.
  double norm_inf() const;
  /// Largest |i - j| with a nonzero entry.
  std::size_t half_bandwidth() const;

 private:
  std::size_t n_ = 0;
  bool tridiagonal_ = true;
  std::vector<double> diagonal_;
  std::vector<double> off_diagonal_;
  std::vector<double> dense_;
};

/// Chain Hamiltonian in the single-particle basis. Open chains come back
/// tridiagonal, periodic chains dense. Throws std::invalid_argument when the
/// realization length differs from params.N.
RealSymmetricMatrix build_chain(const ChainParams& params, const Realization& r);

/// Non-Hermitian N x N block h(phi): diagonal u_i, subdiagonal w, and the
/// twisted corner w * exp(i phi) at (1, N).
class FluxMatrix {
 public:
  FluxMatrix(std::vector<double> couplings, double w, double phi);

  std::size_t dimension() const { return couplings_.size(); }
  double phi() const { return phi_; }
  double w() const { return w_; }
  std::span<const double> couplings() const { return couplings_; }

  std::complex<double> operator()(std::size_t i, std::size_t j) const;
  std::vector<std::complex<double>> to_dense() const;

  /// prod(u_i) + (-1)^(N+1) w^N exp(i phi).
  std::complex<double> determinant() const;
  /// Partial-pivoting LU on the dense matrix scaled by 1/scale (scale > 0).
  /// The result is det(h / scale).
  std::complex<double> determinant_lu(double scale = 1.0) const;

 private:
  std::vector<double> couplings_;
  double w_;
  double phi_;
};

FluxMatrix build_flux_matrix(const Realization& r, double w, double phi);

/// Lower-band energy -sqrt(u^2 + w^2 + 2uw cos k).
double dispersion(double u, double w, double k);

/// Edge-mode decay length 1 / ln|w/u|; DomainError unless |w| > |u| > 0.
double coherence_length(double u, double w);

/// Determinant of a dense complex matrix (row-major) by LU with partial
/// pivoting. The input is taken by value and destroyed.
std::complex<double> complex_determinant(std::vector<std::complex<double>> a, std::size_t n);

}  // namespace sshlab
