#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "sshlab/errors.hpp"
#include "sshlab/model.hpp"

using namespace sshlab;

TEST_CASE("open chain is tridiagonal with alternating bonds") {
  const ChainParams p{3, 1.0, 0.7, Boundary::Open};
  const Realization r{{1.1, 0.9, 1.3}};
  const auto m = build_chain(p, r);
  REQUIRE(m.is_tridiagonal());
  CHECK(m.dimension() == 6);
  const std::vector<double> expected{1.1, 0.7, 0.9, 0.7, 1.3};
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(m.off_diagonal()[i] == expected[i]);
  for (double d : m.diagonal()) CHECK(d == 0.0);
  CHECK(m(5, 0) == 0.0);
}

TEST_CASE("periodic chain adds the closing w bond") {
  const ChainParams p{4, 1.0, 0.6, Boundary::Periodic};
  const Realization r{{1.0, 0.5, 1.5, 2.0}};
  const auto m = build_chain(p, r);
  CHECK_FALSE(m.is_tridiagonal());
  CHECK(m(0, 7) == 0.6);
  CHECK(m(7, 0) == 0.6);
  const auto ref = oracle::chain_dense(r.couplings, 0.6, true);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(m(i, j) == ref[i * 8 + j]);
}

TEST_CASE("chain construction rejects bad input") {
  CHECK_THROWS_AS((ChainParams{1, 1.0, 1.0, Boundary::Open}.validate()), std::invalid_argument);
  const ChainParams p{3, 1.0, 1.0, Boundary::Open};
  CHECK_THROWS_AS(build_chain(p, Realization{{1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(RealSymmetricMatrix::dense(2, {0.0, 1.0, 2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("matrix-vector product and norms agree with the dense form") {
  const ChainParams p{5, 1.0, 0.8, Boundary::Periodic};
  const Realization r{{0.3, -0.4, 1.2, 0.9, 2.2}};
  const auto m = build_chain(p, r);
  std::vector<double> x(10);
  for (std::size_t i = 0; i < 10; ++i) x[i] = std::sin(1.0 + static_cast<double>(i));
  const auto y = m.multiply(x);
  const auto ref = oracle::chain_dense(r.couplings, 0.8, true);
  double norm = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    double s = 0.0, row = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
      s += ref[i * 10 + j] * x[j];
      row += std::abs(ref[i * 10 + j]);
    }
    CHECK(y[i] == doctest::Approx(s).epsilon(1e-14));
    norm = std::max(norm, row);
  }
  CHECK(m.norm_inf() == doctest::Approx(norm));
  CHECK(m.half_bandwidth() == 9);
  CHECK(build_chain({5, 1.0, 0.8, Boundary::Open}, r).half_bandwidth() == 1);
}

TEST_CASE("flux determinant: closed form, LU and cofactor expansion agree") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (std::size_t N : {1u, 2u, 3u, 5u, 6u}) {
    std::vector<double> u(N);
    for (double& x : u) x = U(gen);
    const double w = 0.9;
    for (double phi : {0.0, 0.7, 2.0, 4.5}) {
      const FluxMatrix h(u, w, phi);
      const auto closed = h.determinant();
      const auto lu = h.determinant_lu();
      const auto ref = oracle::cofactor_determinant(h.to_dense(), N);
      CHECK(std::abs(closed - ref) <= 1e-12 * (1.0 + std::abs(ref)));
      CHECK(std::abs(lu - ref) <= 1e-12 * (1.0 + std::abs(ref)));
      CHECK(std::abs(h.determinant_lu(2.0) * std::pow(2.0, static_cast<double>(N)) - ref) <=
            1e-12 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_CASE("flux matrix layout") {
  const FluxMatrix h({1.0, 2.0, 3.0}, 0.5, std::numbers::pi / 2);
  CHECK(h(0, 0) == std::complex<double>(1.0, 0.0));
  CHECK(h(1, 0) == std::complex<double>(0.5, 0.0));
  CHECK(std::abs(h(0, 2) - std::complex<double>(0.0, 0.5)) < 1e-15);
  CHECK(h(0, 1) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("dispersion and coherence length") {
  CHECK(dispersion(1.0, 0.8, std::numbers::pi) == doctest::Approx(-0.2));
  CHECK(dispersion(1.0, 0.8, 0.0) == doctest::Approx(-1.8));
  CHECK(coherence_length(0.8, 1.0) == doctest::Approx(1.0 / std::log(1.25)));
  CHECK_THROWS_AS(coherence_length(1.0, 0.8), DomainError);
  CHECK_THROWS_AS(coherence_length(0.0, 0.8), DomainError);
}
