#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sshlab/analytic.hpp"
#include "sshlab/ensemble.hpp"
#include "sshlab/rng.hpp"

using namespace sshlab;

TEST_CASE("clean distribution gives exact couplings") {
  const auto r = sample_realization(FlatDistribution{0.0, 1.3}, 50, 7, 3);
  for (double c : r.couplings) CHECK(c == 1.3);
  CHECK(r.origin_seed == 7);
  CHECK(r.origin_index == 3);
}

TEST_CASE("flat draws have the right moments and support") {
  const double gamma = 0.5, u = 1.0;
  std::vector<double> x;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto r = sample_realization(FlatDistribution{gamma, u}, 1000, 42, i);
    x.insert(x.end(), r.couplings.begin(), r.couplings.end());
  }
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= n - 1.0;
  CHECK(std::abs(mean - u) <= 5.0 * gamma / std::sqrt(n));
  CHECK(std::abs(var - gamma * gamma) <= 5.0 * gamma * gamma * std::sqrt(0.8 / n));
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  CHECK(*lo >= u - std::sqrt(3.0) * gamma);
  CHECK(*hi <= u + std::sqrt(3.0) * gamma);
}

TEST_CASE("streams are reproducible and distinct") {
  const FlatDistribution d{0.4, 1.0};
  CHECK(sample_realization(d, 20, 1, 5).couplings == sample_realization(d, 20, 1, 5).couplings);
  CHECK(sample_realization(d, 20, 1, 5).couplings != sample_realization(d, 20, 1, 6).couplings);
  CHECK(sample_realization(d, 20, 1, 5).couplings != sample_realization(d, 20, 2, 5).couplings);
  CHECK(stream_seed(0, 0) != stream_seed(0, 1));
}

TEST_CASE("estimates do not depend on the thread count") {
  const ChainParams p{40, 1.0, 0.9, Boundary::Open};
  const FlatDistribution d{0.4, 1.0};
  const auto a = estimate_mean_nu(p, d, {500, 9, 1});
  const auto b = estimate_mean_nu(p, d, {500, 9, 4});
  CHECK(a.value == b.value);
  CHECK(a.standard_error == b.standard_error);
  const auto pa = estimate_wavefunction_profile(p, d, {20, 9, 1});
  const auto pb = estimate_wavefunction_profile(p, d, {20, 9, 3});
  CHECK(pa.value == pb.value);
  CHECK(pa.standard_error == pb.standard_error);
  const ChainParams ring{30, 1.0, 0.9, Boundary::Periodic};
  CHECK(estimate_mean_gap(ring, d, {20, 9, 1}).value == estimate_mean_gap(ring, d, {20, 9, 2}).value);
  CHECK(estimate_eta_moments(ring, d, {200, 9, 1}).value == estimate_eta_moments(ring, d, {200, 9, 5}).value);
}

TEST_CASE("mean nu: clean limits and the Bernoulli identity") {
  CHECK(estimate_mean_nu({100, 1.0, 0.95, Boundary::Open}, {0.0, 1.0}, {50, 1, 1}).scalar() == 0.0);
  CHECK(estimate_mean_nu({100, 1.0, 1.05, Boundary::Open}, {0.0, 1.0}, {50, 1, 1}).scalar() == 1.0);

  const std::size_t R = 2000;
  const auto e = estimate_mean_nu({100, 1.0, 0.95, Boundary::Open}, {0.3, 1.0}, {R, 5, 0});
  const double p = e.scalar();
  CHECK(p > 0.0);
  CHECK(p < 1.0);
  CHECK(e.n_realizations == R);
  CHECK(e.n_excluded == 0);
  const double sample_var = e.scalar_error() * e.scalar_error() * static_cast<double>(R);
  CHECK(sample_var == doctest::Approx(p * (1.0 - p) * R / (R - 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(estimate_mean_nu({100, 1.0, 0.95, Boundary::Open}, {0.3, 1.0}, {1, 5, 0}), std::invalid_argument);
}

TEST_CASE("eta moments follow the cumulants") {
  const ChainParams p{100, 1.0, 1.0, Boundary::Open};
  const auto clean = estimate_eta_moments(p, {0.0, 1.0}, {100, 3, 0});
  CHECK(clean.value[0] == 0.0);
  CHECK(clean.value[1] == 0.0);

  const std::size_t R = 4000;
  const FlatDistribution d{0.2, 1.0};
  const auto e = estimate_eta_moments(p, d, {R, 3, 0});
  const double N = 100.0;
  CHECK(std::abs(e.value[0] - N * z1_quadrature(d)) <= 5.0 * e.standard_error[0]);
  CHECK(std::abs(e.value[1] - N * z2_quadrature(d)) <= 5.0 * e.standard_error[1]);
  CHECK(std::abs(e.value[2]) <= 10.0 / std::sqrt(static_cast<double>(R)));
  CHECK(e.n_resampled == 0);
  CHECK_THROWS_AS(estimate_eta_moments(p, d, {99, 3, 0}), std::invalid_argument);
}

TEST_CASE("wavefunction profile: clean topological and trivial chains") {
  const ChainParams topo{60, 0.8, 1.0, Boundary::Open};
  const auto e = estimate_wavefunction_profile(topo, {0.0, 0.8}, {1, 1, 1});
  const auto& prof = e.value;
  CHECK(std::accumulate(prof.begin(), prof.end(), 0.0) == doctest::Approx(2.0));
  CHECK(prof.front() == doctest::Approx(*std::max_element(prof.begin(), prof.end())).epsilon(1e-6));
  CHECK(prof.back() == doctest::Approx(prof.front()).epsilon(1e-6));
  const double xi = coherence_length(0.8, 1.0);
  CHECK(std::log(prof[1] / prof[5]) / 4.0 == doctest::Approx(2.0 / xi).epsilon(0.05));
  CHECK(edge_weight_fraction(prof) > 0.85);

  const ChainParams trivial{60, 1.0, 0.8, Boundary::Open};
  const auto t = estimate_wavefunction_profile(trivial, {0.0, 1.0}, {1, 1, 1}).value;
  const double mean = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
  CHECK(*std::max_element(t.begin(), t.end()) / mean < 5.0);

  CHECK_THROWS_AS(estimate_wavefunction_profile({20, 1.0, 0.8, Boundary::Periodic}, {0.1, 1.0}, {2, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("mean gap") {
  const auto g = estimate_mean_gap({30, 1.0, 0.8, Boundary::Periodic}, {0.0, 1.0}, {3, 1, 1});
  CHECK(g.scalar() == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(g.scalar_error() == 0.0);
  for (std::size_t N : {50u, 51u, 200u}) {
    const auto c = estimate_mean_gap({N, 1.0, 1.0, Boundary::Periodic}, {0.0, 1.0}, {1, 1, 1});
    CHECK(c.scalar() <= 2.0 * std::numbers::pi / static_cast<double>(N) + 1e-12);
  }
}

TEST_CASE("edge weight fraction") {
  std::vector<double> flat(20, 0.1);
  CHECK(edge_weight_fraction(flat, 5) == doctest::Approx(0.5));
  std::vector<double> peaks(20, 0.0);
  peaks[0] = 1.0;
  peaks[19] = 1.0;
  CHECK(edge_weight_fraction(peaks, 5) == 1.0);
}
