#include "sshlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sshlab/errors.hpp"

namespace sshlab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 50;
constexpr std::size_t kMaxBandForGivens = 4;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void scale(std::span<double> a, double factor) {
  for (double& x : a) x *= factor;
}

// Householder reduction of a dense symmetric matrix (row-major, lower
// triangle used) to tridiagonal form; eigenvalues only.
void householder_tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& diagonal,
                                std::vector<double>& off_diagonal) {
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  std::vector<double> e(n, 0.0);
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    if (l > 0) {
      double sc = 0.0;
      for (std::size_t k = 0; k <= l; ++k) sc += std::abs(A(i, k));
      if (sc == 0.0) {
        e[i] = A(i, l);
      } else {
        double h = 0.0;
        for (std::size_t k = 0; k <= l; ++k) {
          A(i, k) /= sc;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = sc * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = A(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k) A(j, k) -= f * e[k] + g * A(i, k);
        }
      }
    } else {
      e[i] = A(i, l);
    }
  }
  diagonal.resize(n);
  off_diagonal.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diagonal[i] = A(i, i);
  for (std::size_t i = 1; i < n; ++i) off_diagonal[i - 1] = e[i];
}

// Reduces a symmetric band matrix (dense storage) to tridiagonal form with
// Givens rotations, chasing each fill-in bulge off the bottom of the band.
void givens_band_reduce(std::vector<double>& a, std::size_t n, std::size_t b,
                        std::vector<double>& diagonal, std::vector<double>& off_diagonal) {
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  const std::size_t reach = 2 * b + 2;

  // Rotation in the (p, p+1) plane chosen to zero A(p+1, col) against A(p, col).
  auto annihilate = [&](std::size_t p, std::size_t col) {
    const std::size_t q = p + 1;
    const double x = A(p, col);
    const double y = A(q, col);
    if (y == 0.0) return;
    const double r = std::hypot(x, y);
    const double c = x / r;
    const double s = y / r;
    const std::size_t lo = p >= reach ? p - reach : 0;
    const std::size_t hi = std::min(n - 1, q + reach);
    for (std::size_t k = lo; k <= hi; ++k) {
      const double xp = A(p, k);
      const double xq = A(q, k);
      A(p, k) = c * xp + s * xq;
      A(q, k) = -s * xp + c * xq;
    }
    for (std::size_t k = lo; k <= hi; ++k) {
      const double xp = A(k, p);
      const double xq = A(k, q);
      A(k, p) = c * xp + s * xq;
      A(k, q) = -s * xp + c * xq;
    }
    A(q, col) = 0.0;
    A(col, q) = 0.0;
  };

  if (b > 1) {
    for (std::size_t j = 0; j + 2 < n; ++j) {
      for (std::size_t k = std::min(j + b, n - 1); k >= j + 2; --k) {
        if (A(k, j) == 0.0) continue;
        annihilate(k - 1, j);
        std::size_t col = k - 1;
        for (std::size_t row = k + b; row < n; row += b) {
          annihilate(row - 1, col);
          col = row - 1;
        }
      }
    }
  }
  diagonal.resize(n);
  off_diagonal.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diagonal[i] = A(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) off_diagonal[i] = A(i + 1, i);
}

SpectralResult finish_ql(std::vector<double> diagonal, std::vector<double> off_diagonal) {
  tridiagonal_ql(diagonal, off_diagonal);
  return make_spectral_result(std::move(diagonal));
}

// Gaussian elimination with partial pivoting for (T - sigma I), T tridiagonal.
class ShiftedTridiagonalSolver {
 public:
  ShiftedTridiagonalSolver(std::span<const double> diagonal, std::span<const double> off_diagonal,
                           double sigma, double tiny)
      : n_(diagonal.size()),
        dl_(off_diagonal.begin(), off_diagonal.end()),
        d_(diagonal.begin(), diagonal.end()),
        du_(off_diagonal.begin(), off_diagonal.end()),
        du2_(n_ > 2 ? n_ - 2 : 0, 0.0),
        swapped_(n_ > 0 ? n_ - 1 : 0, false) {
    for (double& x : d_) x -= sigma;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] != 0.0) {
          const double fact = dl_[i] / d_[i];
          dl_[i] = fact;
          d_[i + 1] -= fact * du_[i];
        } else {
          dl_[i] = 0.0;
        }
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    for (double& x : d_)
      if (std::abs(x) < tiny) x = std::copysign(tiny, x == 0.0 ? 1.0 : x);
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    for (std::size_t i = n_ >= 3 ? n_ - 3 : 0; n_ >= 3; --i) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
      if (i == 0) break;
    }
  }

 private:
  std::size_t n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

// Dense LU with partial pivoting for (A - sigma I).
class ShiftedDenseSolver {
 public:
  ShiftedDenseSolver(std::span<const double> a, std::size_t n, double sigma, double tiny)
      : n_(n), lu_(a.begin(), a.end()), pivot_(n) {
    for (std::size_t i = 0; i < n_; ++i) lu_[i * n_ + i] -= sigma;
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n_; ++i)
        if (std::abs(lu_[i * n_ + k]) > std::abs(lu_[p * n_ + k])) p = i;
      pivot_[k] = p;
      if (p != k)
        for (std::size_t j = 0; j < n_; ++j) std::swap(lu_[k * n_ + j], lu_[p * n_ + j]);
      double& diag = lu_[k * n_ + k];
      if (std::abs(diag) < tiny) diag = std::copysign(tiny, diag == 0.0 ? 1.0 : diag);
      for (std::size_t i = k + 1; i < n_; ++i) {
        const double f = lu_[i * n_ + k] / diag;
        lu_[i * n_ + k] = f;
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j < n_; ++j) lu_[i * n_ + j] -= f * lu_[k * n_ + j];
      }
    }
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t k = 0; k < n_; ++k) {
      std::swap(b[k], b[pivot_[k]]);
      for (std::size_t i = k + 1; i < n_; ++i) b[i] -= lu_[i * n_ + k] * b[k];
    }
    for (std::size_t k = n_; k-- > 0;) {
      double s = b[k];
      for (std::size_t j = k + 1; j < n_; ++j) s -= lu_[k * n_ + j] * b[j];
      b[k] = s / lu_[k * n_ + k];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> lu_;
  std::vector<std::size_t> pivot_;
};

class ShiftedSolver {
 public:
  ShiftedSolver(const RealSymmetricMatrix& m, double sigma, double tiny) {
    if (m.is_tridiagonal())
      tri_.emplace_back(m.diagonal(), m.off_diagonal(), sigma, tiny);
    else
      dense_.emplace_back(m.dense_data(), m.dimension(), sigma, tiny);
  }
  void solve(std::vector<double>& b) const {
    if (!tri_.empty())
      tri_.front().solve(b);
    else
      dense_.front().solve(b);
  }

 private:
  std::vector<ShiftedTridiagonalSolver> tri_;
  std::vector<ShiftedDenseSolver> dense_;
};

// Orthonormalizes (x, y) in place by two passes of Gram-Schmidt.
void orthonormalize(std::vector<double>& x, std::vector<double>& y) {
  const double nx = norm2(x);
  if (nx == 0.0) throw ConvergenceError("inverse iteration produced a zero vector");
  scale(x, 1.0 / nx);
  for (int pass = 0; pass < 2; ++pass) {
    const double proj = dot(x, y);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= proj * x[i];
  }
  const double ny = norm2(y);
  if (ny == 0.0) throw ConvergenceError("inverse iteration collapsed the pair onto one vector");
  scale(y, 1.0 / ny);
}

double residual(const RealSymmetricMatrix& m, std::span<const double> v, double lambda) {
  const auto mv = m.multiply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = mv[i] - lambda * v[i];
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace

SpectralResult make_spectral_result(std::vector<double> eigenvalues) {
  SpectralResult out;
  std::sort(eigenvalues.begin(), eigenvalues.end());
  out.eigenvalues = std::move(eigenvalues);
  const auto& e = out.eigenvalues;
  if (e.empty()) return out;
  std::size_t best = 0;
  for (std::size_t i = 1; i < e.size(); ++i)
    if (std::abs(e[i]) < std::abs(e[best])) best = i;
  out.gap = 2.0 * std::abs(e[best]);
  std::size_t partner = best;
  double mismatch = std::numeric_limits<double>::infinity();
  for (std::size_t j : {best - 1, best + 1}) {
    if (j >= e.size()) continue;  // best - 1 wraps for best == 0
    const double mm = std::abs(e[j] + e[best]);
    if (mm < mismatch) {
      mismatch = mm;
      partner = j;
    }
  }
  out.min_pair_indices = {std::min(best, partner), std::max(best, partner)};
  return out;
}

void tridiagonal_ql(std::span<double> d, std::span<double> e) {
  const std::size_t n = d.size();
  if (e.size() + 1 < n) throw std::invalid_argument("tridiagonal_ql: off-diagonal too short");
  if (n == 0) return;
  std::vector<double> off(n, 0.0);
  std::copy_n(e.begin(), n - 1, off.begin());

  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(d[i]) + std::abs(off[i]);
    if (i > 0) row += std::abs(off[i - 1]);
    norm = std::max(norm, row);
  }
  const double threshold = kEps * norm;

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    while (true) {
      std::size_t m = l;
      while (m + 1 < n && std::abs(off[m]) > threshold) ++m;
      if (m == l) break;
      if (++sweeps > kMaxSweeps)
        throw ConvergenceError("tridiagonal_ql: no convergence for eigenvalue " + std::to_string(l) +
                               " after " + std::to_string(kMaxSweeps) + " sweeps");
      double g = (d[l + 1] - d[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          off[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    }
  }
}

SpectralResult eigenvalues_tridiagonal(const RealSymmetricMatrix& m) {
  if (!m.is_tridiagonal()) throw std::invalid_argument("eigenvalues_tridiagonal: matrix is dense");
  return finish_ql({m.diagonal().begin(), m.diagonal().end()},
                   {m.off_diagonal().begin(), m.off_diagonal().end()});
}

SpectralResult eigenvalues_dense(const RealSymmetricMatrix& m) {
  const auto dense = m.to_dense();
  const std::size_t n = dense.dimension();
  std::vector<double> a(dense.dense_data().begin(), dense.dense_data().end());
  std::vector<double> diagonal, off_diagonal;
  if (n == 1) return make_spectral_result({a[0]});
  householder_tridiagonalize(a, n, diagonal, off_diagonal);
  return finish_ql(std::move(diagonal), std::move(off_diagonal));
}

SpectralResult eigenvalues_banded(const RealSymmetricMatrix& m, std::size_t half_bandwidth) {
  if (m.is_tridiagonal()) return eigenvalues_tridiagonal(m);
  if (m.half_bandwidth() > half_bandwidth)
    throw std::invalid_argument("eigenvalues_banded: matrix exceeds the stated bandwidth");
  const std::size_t n = m.dimension();
  std::vector<double> a(m.dense_data().begin(), m.dense_data().end());
  std::vector<double> diagonal, off_diagonal;
  givens_band_reduce(a, n, std::max<std::size_t>(half_bandwidth, 1), diagonal, off_diagonal);
  return finish_ql(std::move(diagonal), std::move(off_diagonal));
}

SpectralResult eigenvalues(const RealSymmetricMatrix& m) {
  if (m.is_tridiagonal()) return eigenvalues_tridiagonal(m);
  const std::size_t b = m.half_bandwidth();
  if (b <= kMaxBandForGivens) return eigenvalues_banded(m, b);
  const auto order = zigzag_order(m.dimension());
  const auto reordered = permute(m, order);
  const std::size_t rb = reordered.half_bandwidth();
  if (rb <= kMaxBandForGivens) return eigenvalues_banded(reordered, rb);
  return eigenvalues_dense(m);
}

std::vector<std::size_t> zigzag_order(std::size_t n) {
  std::vector<std::size_t> order;
  order.reserve(n);
  if (n == 0) return order;
  order.push_back(0);
  std::size_t lo = 1;
  std::size_t hi = n - 1;
  bool take_low = true;
  while (lo <= hi) {
    order.push_back(take_low ? lo++ : hi--);
    take_low = !take_low;
  }
  return order;
}

RealSymmetricMatrix permute(const RealSymmetricMatrix& m, std::span<const std::size_t> order) {
  const std::size_t n = m.dimension();
  if (order.size() != n) throw std::invalid_argument("permute: order has wrong length");
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(order[i], order[j]);
  return RealSymmetricMatrix::dense(n, std::move(a));
}

NearZeroPair eigenpair_near_zero(const RealSymmetricMatrix& m, const SpectralResult& spectrum) {
  const std::size_t n = m.dimension();
  if (spectrum.eigenvalues.size() != n)
    throw std::invalid_argument("eigenpair_near_zero: spectrum does not match the matrix");
  if (n < 2) throw std::invalid_argument("eigenpair_near_zero: need dimension >= 2");

  const double norm = std::max(m.norm_inf(), std::numeric_limits<double>::min());
  const double tiny = kEps * norm;
  const double tol = 1e-10 * norm;
  const double lower = spectrum.eigenvalues[spectrum.min_pair_indices[0]];
  const double upper = spectrum.eigenvalues[spectrum.min_pair_indices[1]];

  NearZeroPair out;
  out.degenerate = std::abs(upper - lower) <= 1e-13 * norm;

  const ShiftedSolver solve_plus(m, upper, tiny);
  const ShiftedSolver solve_minus(m, lower, tiny);

  // Deterministic, generic start vectors.
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    x[i] = 1.0 + 0.5 * std::sin(0.7 * t + 0.3);
    y[i] = ((i % 2 == 0) ? 1.0 : -1.0) * (1.0 + 0.5 * std::cos(1.3 * t + 0.1));
  }

  for (int iteration = 0; iteration < 20; ++iteration) {
    solve_plus.solve(x);
    solve_minus.solve(y);
    orthonormalize(x, y);

    // Rayleigh-Ritz on span{x, y}.
    const auto mx = m.multiply(x);
    const auto my = m.multiply(y);
    const double axx = dot(x, mx);
    const double ayy = dot(y, my);
    const double axy = 0.5 * (dot(x, my) + dot(y, mx));
    const double half_diff = 0.5 * (axx - ayy);
    const double radius = std::hypot(half_diff, axy);
    const double mean = 0.5 * (axx + ayy);
    const double theta_plus = mean + radius;
    const double theta_minus = mean - radius;
    // Rotation angle taking x onto the larger Ritz vector.
    const double angle = 0.5 * std::atan2(2.0 * axy, axx - ayy);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    std::vector<double> vp(n), vm(n);
    for (std::size_t i = 0; i < n; ++i) {
      vp[i] = c * x[i] + s * y[i];
      vm[i] = -s * x[i] + c * y[i];
    }
    const double rp = residual(m, vp, theta_plus);
    const double rm = residual(m, vm, theta_minus);
    x = vp;
    y = vm;
    if (std::max(rp, rm) <= tol) {
      out.plus = std::move(vp);
      out.minus = std::move(vm);
      out.energy_plus = theta_plus;
      out.energy_minus = theta_minus;
      out.max_residual = std::max(rp, rm);
      return out;
    }
  }
  throw ConvergenceError("inverse iteration stagnated near E = 0");
}

std::vector<double> eigenvector_near_zero(const RealSymmetricMatrix& m,
                                          const SpectralResult& spectrum, Which which) {
  auto pair = eigenpair_near_zero(m, spectrum);
  return which == Which::Plus ? std::move(pair.plus) : std::move(pair.minus);
}

}  // namespace sshlab
