#include "sshlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sshlab/errors.hpp"

namespace sshlab {

void ChainParams::validate() const {
  if (N < 2) throw std::invalid_argument("chain needs at least 2 dimers, got N=" + std::to_string(N));
}

Realization clean_realization(const ChainParams& params) {
  return Realization{std::vector<double>(params.N, params.u), 0, 0};
}

RealSymmetricMatrix RealSymmetricMatrix::tridiagonal(std::vector<double> diagonal,
                                                     std::vector<double> off_diagonal) {
  if (diagonal.empty() || off_diagonal.size() + 1 != diagonal.size())
    throw std::invalid_argument("tridiagonal: off-diagonal must have n-1 entries");
  RealSymmetricMatrix m;
  m.n_ = diagonal.size();
  m.tridiagonal_ = true;
  m.diagonal_ = std::move(diagonal);
  m.off_diagonal_ = std::move(off_diagonal);
  return m;
}

RealSymmetricMatrix RealSymmetricMatrix::dense(std::size_t n, std::vector<double> row_major) {
  if (n == 0 || row_major.size() != n * n)
    throw std::invalid_argument("dense: storage size must be n*n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (row_major[i * n + j] != row_major[j * n + i])
        throw std::invalid_argument("dense: matrix is not symmetric");
  RealSymmetricMatrix m;
  m.n_ = n;
  m.tridiagonal_ = false;
  m.dense_ = std::move(row_major);
  return m;
}

double RealSymmetricMatrix::operator()(std::size_t i, std::size_t j) const {
  if (!tridiagonal_) return dense_[i * n_ + j];
  if (i == j) return diagonal_[i];
  if (i + 1 == j) return off_diagonal_[i];
  if (j + 1 == i) return off_diagonal_[j];
  return 0.0;
}

RealSymmetricMatrix RealSymmetricMatrix::to_dense() const {
  if (!tridiagonal_) return *this;
  std::vector<double> a(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) a[i * n_ + i] = diagonal_[i];
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    a[i * n_ + i + 1] = off_diagonal_[i];
    a[(i + 1) * n_ + i] = off_diagonal_[i];
  }
  return dense(n_, std::move(a));
}

std::vector<double> RealSymmetricMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<double> y(n_, 0.0);
  if (tridiagonal_) {
    for (std::size_t i = 0; i < n_; ++i) {
      double s = diagonal_[i] * x[i];
      if (i > 0) s += off_diagonal_[i - 1] * x[i - 1];
      if (i + 1 < n_) s += off_diagonal_[i] * x[i + 1];
      y[i] = s;
    }
    return y;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    const double* row = dense_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

double RealSymmetricMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    if (tridiagonal_) {
      s = std::abs(diagonal_[i]);
      if (i > 0) s += std::abs(off_diagonal_[i - 1]);
      if (i + 1 < n_) s += std::abs(off_diagonal_[i]);
    } else {
      for (std::size_t j = 0; j < n_; ++j) s += std::abs(dense_[i * n_ + j]);
    }
    best = std::max(best, s);
  }
  return best;
}

std::size_t RealSymmetricMatrix::half_bandwidth() const {
  if (tridiagonal_) return n_ > 1 ? 1 : 0;
  std::size_t b = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + b + 1; j < n_; ++j)
      if (dense_[i * n_ + j] != 0.0) b = j - i;
  return b;
}

RealSymmetricMatrix build_chain(const ChainParams& params, const Realization& r) {
  params.validate();
  if (r.size() != params.N)
    throw std::invalid_argument("build_chain: realization has " + std::to_string(r.size()) +
                                " couplings, chain has N=" + std::to_string(params.N));
  const std::size_t n = 2 * params.N;
  std::vector<double> off(n - 1);
  for (std::size_t i = 0; i < params.N; ++i) {
    off[2 * i] = r.couplings[i];
    if (2 * i + 1 < n - 1) off[2 * i + 1] = params.w;
  }
  auto open = RealSymmetricMatrix::tridiagonal(std::vector<double>(n, 0.0), std::move(off));
  if (params.bc == Boundary::Open) return open;

  auto dense = open.to_dense();
  std::vector<double> a(dense.dense_data().begin(), dense.dense_data().end());
  a[n - 1] += params.w;  // b_N -- a_1
  a[(n - 1) * n] += params.w;
  return RealSymmetricMatrix::dense(n, std::move(a));
}

FluxMatrix::FluxMatrix(std::vector<double> couplings, double w, double phi)
    : couplings_(std::move(couplings)), w_(w), phi_(phi) {
  if (couplings_.empty()) throw std::invalid_argument("flux matrix needs at least one coupling");
}

std::complex<double> FluxMatrix::operator()(std::size_t i, std::size_t j) const {
  const std::size_t n = couplings_.size();
  std::complex<double> value = 0.0;
  if (i == j) value += couplings_[i];
  if (i == j + 1) value += w_;
  if (i == 0 && j == n - 1) value += w_ * std::polar(1.0, phi_);
  return value;
}

std::vector<std::complex<double>> FluxMatrix::to_dense() const {
  const std::size_t n = couplings_.size();
  std::vector<std::complex<double>> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = (*this)(i, j);
  return a;
}

std::complex<double> FluxMatrix::determinant() const {
  const std::size_t n = couplings_.size();
  double product = 1.0;
  for (double c : couplings_) product *= c;
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N+1)
  return product + sign * std::pow(w_, static_cast<double>(n)) * std::polar(1.0, phi_);
}

std::complex<double> FluxMatrix::determinant_lu(double scale) const {
  if (!(scale > 0.0)) throw std::invalid_argument("determinant_lu: scale must be positive");
  auto a = to_dense();
  for (auto& x : a) x /= scale;
  return complex_determinant(std::move(a), couplings_.size());
}

FluxMatrix build_flux_matrix(const Realization& r, double w, double phi) {
  return FluxMatrix(r.couplings, w, phi);
}

double dispersion(double u, double w, double k) {
  return -std::sqrt(std::max(0.0, u * u + w * w + 2.0 * u * w * std::cos(k)));
}

double coherence_length(double u, double w) {
  if (!(std::abs(w) > std::abs(u) && u != 0.0))
    throw DomainError("no localized edge mode: coherence length needs |w| > |u| > 0");
  return 1.0 / std::log(std::abs(w / u));
}

std::complex<double> complex_determinant(std::vector<std::complex<double>> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("complex_determinant: size mismatch");
  std::complex<double> det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a[i * n + k]);
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(k * n),
                       a.begin() + static_cast<std::ptrdiff_t>((k + 1) * n),
                       a.begin() + static_cast<std::ptrdiff_t>(pivot * n));
      det = -det;
    }
    const std::complex<double> diag = a[k * n + k];
    det *= diag;
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::complex<double> factor = a[i * n + k] / diag;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= factor * a[k * n + j];
    }
  }
  return det;
}

}  // namespace sshlab
