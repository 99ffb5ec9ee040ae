#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sshlab/analytic.hpp"
#include "sshlab/born.hpp"
#include "sshlab/errors.hpp"

using namespace sshlab;

namespace {

Matrix2c multiply(const Matrix2c& a, const Matrix2c& b) {
  Matrix2c c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Matrix2c dagger(const Matrix2c& a) {
  return {{{std::conj(a[0][0]), std::conj(a[1][0])}, {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

double norm(const Matrix2c& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (const auto& x : row) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("bare Green function is the resolvent of the Bloch Hamiltonian") {
  const BornParams p{1.0, 0.8, 0.0, 1e-3, 0.37};
  const Complex z(p.omega, p.alpha);
  for (double k : {-3.0, -1.2, 0.0, 0.5, 2.9}) {
    const Complex off = p.u + p.w * std::polar(1.0, -k);  // (u + w cos k) - i w sin k
    const Matrix2c zmh{{{z, -off}, {-std::conj(off), z}}};
    const auto id = multiply(bare_greens_function(k, p), zmh);
    CHECK(std::abs(id[0][0] - 1.0) < 1e-12);
    CHECK(std::abs(id[1][1] - 1.0) < 1e-12);
    CHECK(std::abs(id[0][1]) < 1e-12);
    CHECK(std::abs(id[1][0]) < 1e-12);
    // G - G^dagger = -2 i alpha G G^dagger
    const auto G = bare_greens_function(k, p);
    const auto lhs = G;
    const auto gd = dagger(G);
    const auto ggd = multiply(G, gd);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs((lhs[i][j] - gd[i][j]) - Complex(0.0, -2.0 * p.alpha) * ggd[i][j]) < 1e-10);
  }
}

TEST_CASE("bare Green function poles") {
  // Isolated dimer: poles at omega = +-u for every k.
  for (double k : {0.0, 1.0, 2.5})
    CHECK(norm(bare_greens_function(k, BornParams{1.0, 0.0, 0.0, 1e-6, 1.0})) > 1e5);
  // eps_pi = |u - w| = 0.2
  CHECK(norm(bare_greens_function(std::numbers::pi, BornParams{1.0, 0.8, 0.0, 1e-6, 0.2})) > 1e5);
  CHECK(norm(bare_greens_function(std::numbers::pi, BornParams{1.0, 0.8, 0.0, 1e-6, 0.5})) < 10.0);
}

TEST_CASE("f is purely imaginary at the midgap and retarded everywhere") {
  for (double delta : {0.3, 0.05, -0.1}) {
    const BornParams p{1.0, 1.0 - delta, 0.0, 1e-4, 0.0};
    const auto f = f_quadrature(p);
    CHECK(std::abs(f.real()) < 1e-9);
    CHECK(f.imag() < 0.0);
  }
  for (double omega : {-2.5, -0.6, 0.1, 0.9, 1.5}) {
    CAPTURE(omega);
    CHECK(f_quadrature(BornParams{1.0, 0.7, 0.0, 1e-3, omega}).imag() <= 0.0);
  }
}

TEST_CASE("midgap g from the contour integral") {
  // For alpha -> 0 the average of (u + w cos k)/(-eps_k^2) is -1/u when
  // |u| > |w| and 0 otherwise (residues of 1/(z (u + w z))).
  CHECK(std::abs(g_quadrature(BornParams{1.0, 1.2, 0.0, 1e-8, 0.0}).real()) < 1e-7);
  CHECK(g_quadrature(BornParams{1.0, 0.8, 0.0, 1e-8, 0.0}).real() == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(g_quadrature(BornParams{2.0, 0.5, 0.0, 1e-8, 0.0}).real() == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("midgap f from the closed-form zone average") {
  // average of 1/(u^2 + w^2 + 2uw cos k) = 1/|u^2 - w^2|
  for (double w : {0.5, 0.9, 1.3}) {
    const double alpha = 1e-7;
    const auto f = f_quadrature(BornParams{1.0, w, 0.0, alpha, 0.0});
    CHECK(f.imag() == doctest::Approx(-alpha / std::abs(1.0 - w * w)).epsilon(1e-6));
  }
}

TEST_CASE("f approaches the narrow-peak form as delta shrinks") {
  double prev = 1.0;
  for (double delta : {0.1, 0.03, 0.01}) {
    const double alpha = 1e-5;
    const auto f = f_quadrature(BornParams{1.0, 1.0 - delta, 0.0, alpha, 0.0});
    const auto fn = f_narrow_peak(delta, 1.0, alpha);
    const double err = std::abs(f - fn) / std::abs(fn);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 0.05);
}

TEST_CASE("narrow-peak forms") {
  CHECK(std::abs(f_narrow_peak(0.0, 1.0, 1e-6) - Complex(0.0, -0.5)) < 1e-15);
  CHECK(g_narrow_peak(0.0, 1.0, 1e-6) == Complex(0.0, 0.0));
  CHECK(std::abs(f_narrow_peak(0.2, 2.0, 1e-12)) < 1e-11);
  CHECK(g_narrow_peak(0.2, 2.0, 1e-12).real() == doctest::Approx(-0.25));
  const double a = 0.01;
  CHECK(f_narrow_peak(a, 1.0, a).imag() == doctest::Approx(-1.0 / (2.0 * std::sqrt(2.0))));
  CHECK(g_narrow_peak(a, 1.0, a).real() == doctest::Approx(-1.0 / (2.0 * std::sqrt(2.0))));
}

TEST_CASE("quadrature is stable under a tighter tolerance") {
  const BornParams p{1.0, 0.97, 0.0, 1e-5, 0.0};
  CHECK(std::abs(f_quadrature(p) - f_quadrature(p, 0.5 * kBornTolerance)) < kBornTolerance);
  CHECK(std::abs(g_quadrature(p) - g_quadrature(p, 0.5 * kBornTolerance)) < kBornTolerance);
}

TEST_CASE("averaged Green function") {
  const BornParams clean{1.0, 0.8, 0.0, 1e-4, 0.1};
  for (double k : {0.0, 1.0, 3.0}) {
    const auto a = averaged_greens_function(k, clean);
    const auto b = bare_greens_function(k, clean);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(a[i][j] == b[i][j]);
  }
  // At the touching point the renormalized gap closes and G(pi, 0) grows as alpha shrinks.
  const double u = 1.0, delta = 0.02;
  const double gamma = std::sqrt(2.0 * u * delta);
  double prev = 0.0;
  for (double alpha : {1e-3, 1e-4, 1e-5}) {
    const double size = norm(averaged_greens_function(std::numbers::pi, BornParams{u, u - delta, gamma, alpha, 0.0}));
    CHECK(size > 5.0 * prev);
    prev = size;
  }
  for (double omega : {-0.5, -0.05, 0.0, 0.05, 0.5}) {
    const BornParams p{1.0, 0.9, 0.3, 1e-3, omega};
    CHECK(averaged_greens_function(2.0, p, BornMethod::Quadrature)[0][0].imag() < 0.0);
  }
}

TEST_CASE("midgap density of states") {
  for (double u : {0.5, 1.0, 2.0})
    for (double delta : {1e-3, 0.01, 0.1}) {
      const double gamma = std::sqrt(2.0 * u * delta);
      CHECK(std::abs(midgap_dos(delta, u, gamma, 1e-6 * u) - 1.0 / (2.0 * std::numbers::pi * u)) <= 1e-10);
    }
  CHECK(midgap_dos(0.1, 1.0, 0.0, 1e-9) < 1e-8);
  CHECK(midgap_dos(0.1, 1.0, 0.0, 1e-9) < midgap_dos(0.1, 1.0, 0.0, 1e-6));
  CHECK_THROWS_AS(midgap_dos(0.0, 1.0, 0.2, 1e-6), DomainError);
  CHECK_THROWS_AS(midgap_dos(-0.1, 1.0, 0.2, 1e-6), DomainError);

  // Scan in gamma: the maximum sits on the touching point.
  const double delta = 0.05;
  double best = -1.0, best_gamma = 0.0;
  const double step = 1e-3;
  for (double g = 0.0; g <= 1.0; g += step) {
    const double rho = midgap_dos(delta, 1.0, g, 1e-6);
    CHECK(rho >= 0.0);
    if (rho > best) {
      best = rho;
      best_gamma = g;
    }
  }
  CHECK(std::abs(best_gamma - std::sqrt(2.0 * delta)) <= step);
}

TEST_CASE("band touching coincides with the weak-disorder critical strength") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> U(0.01, 5.0);
  for (int i = 0; i < 100; ++i) {
    double u = U(gen), w = U(gen);
    if (w > u) std::swap(u, w);
    CHECK(band_touch_gamma(u, w) == critical_gamma_weak(u, w));
  }
  CHECK(band_touch_gamma(1.0, 1.0) == 0.0);
  CHECK(band_touch_gamma(1.0, 0.8) == doctest::Approx(0.63245553203367588));
  CHECK_THROWS_AS(band_touch_gamma(1.0, 1.1), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(f_quadrature(BornParams{1.0, 0.8, 0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(bare_greens_function(0.0, BornParams{1.0, 0.8, 0.0, -1.0, 0.0}), std::invalid_argument);
}
