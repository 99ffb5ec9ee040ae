#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sshlab/errors.hpp"
#include "sshlab/quadrature.hpp"

using namespace sshlab;

TEST_CASE("smooth integrands") {
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13).value ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2, 1e-13).value ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("endpoint log singularity") {
  // int_0^1 ln x dx = -1
  const auto r = integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-11);
  CHECK(std::abs(r.value + 1.0) < 1e-10);
  CHECK(r.error_estimate <= 1e-11);
}

TEST_CASE("interior singularity split by panels") {
  // int_{-1}^{2} ln|x| dx = 2 ln 2 - 3
  const std::vector<double> pts{-1.0, 0.0, 2.0};
  const auto r = integrate_panels([](double x) { return std::log(std::abs(x)); }, pts, 1e-11);
  CHECK(std::abs(r.value - (2.0 * std::log(2.0) - 3.0)) < 1e-10);
}

TEST_CASE("narrow Lorentzian") {
  const double a = 1e-4;
  const auto r = integrate([a](double x) { return a / (x * x + a * a); }, -1.0, 1.0, 1e-10, 10000);
  CHECK(std::abs(r.value - 2.0 * std::atan(1.0 / a)) < 1e-9);
}

TEST_CASE("failure to converge reports the estimate") {
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / x) / x; }, 1e-8, 1.0, 1e-14, 20),
                  ConvergenceError);
}
