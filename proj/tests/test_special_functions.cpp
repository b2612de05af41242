#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "magvac/errors.hpp"
#include "magvac/special_functions.hpp"
#include "test_util.hpp"

using namespace magvac;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("x coth x - 1: anchors, series crossover, large-argument stability") {
  CHECK(coth_m1(0.0) == 0.0);
  CHECK(coth_m1(1.0) == rel(0.3130352854993313, 1e-14));

  // Series and direct formulas must agree tightly at the crossover.
  const double xc = 1e-2;
  CHECK(coth_m1(xc * 0.999) == rel(coth_m1(xc * 1.001), 1e-2));
  CHECK(coth_m1(xc * 0.5) == rel(0.5 * xc / std::tanh(0.5 * xc) - 1.0, 1e-10));
  CHECK(coth_m1(xc) == rel(xc / std::tanh(xc) - 1.0, 1e-10));

  CHECK(coth_m1(800.0) == rel(799.0, 1e-14));
  CHECK(std::isfinite(coth_m1(1e6)));
  CHECK_THROWS_AS(coth_m1(-0.1), DomainError);
}

TEST_CASE("theta function: dual representations agree across the modular line") {
  SeriesPolicy pol;
  for (double beta : {0.5, 2.0, 10.0}) {
    for (int i = 0; i < 50; ++i) {
      const double x = 1e-2 * std::pow(1e4, i / 49.0);  // modular parameter in [1e-2, 1e2]
      const double s = x * beta * beta / (4.0 * kPi * kPi);
      const double direct = theta2_direct(s, beta, pol);
      const double poisson = theta2_poisson(s, beta, pol);
      REQUIRE(direct > 0.0);
      CHECK(direct == rel(poisson, 1e-10));
    }
  }
}

TEST_CASE("theta function golden value at the self-dual point x = pi") {
  SeriesPolicy pol;
  const double beta = 2.0;
  const double s = beta * beta / (4.0 * kPi);
  CHECK(theta2(s, beta, pol) == rel(0.9135791381561168, 1e-13));
  CHECK(theta2_direct(s, beta, pol) == rel(theta2_poisson(s, beta, pol), 1e-13));
}

TEST_CASE("theta s-derivative: sign, branch agreement, finite differences") {
  SeriesPolicy pol;
  for (double beta : {0.7, 2.0}) {
    for (double x : {0.3, 0.9, 1.1, 4.0}) {
      const double s = x * beta * beta / (4.0 * kPi * kPi);
      const double sp = theta2_sprime(s, beta, pol);
      CHECK(sp <= 0.0);
      const double h = s * 1e-6;
      const double fd = (theta2(s + h, beta, pol) - theta2(s - h, beta, pol)) / (2.0 * h);
      CHECK(sp == rel(fd, 1e-6));
    }
  }

  // Forcing each representation across the default switch point must agree.
  const double beta = 2.0, s = beta * beta / (4.0 * kPi * kPi);  // x = 1 exactly
  SeriesPolicy lo;
  lo.theta_switch = 0.5;  // direct branch at x = 1
  SeriesPolicy hi;
  hi.theta_switch = 2.0;  // Poisson branch at x = 1
  CHECK(theta2_sprime(s, beta, lo) == rel(theta2_sprime(s, beta, hi), 1e-11));
}

TEST_CASE("alternating thermal sum: defining series, dual branch, asymptote") {
  SeriesPolicy pol;

  auto direct_sum = [](double c) {
    double sum = 0.0;
    for (int n = 1; n <= 60; ++n) sum += ((n % 2 == 1) ? -1.0 : 1.0) * std::exp(-c * n * n);
    return sum;
  };

  for (double c : {0.25, 0.5, 2.0, 8.0}) {
    const double beta = 1.3;
    const double s = beta * beta / (4.0 * c);
    CHECK(thermal_altsum(s, beta, pol) == rel(direct_sum(c), 1e-12));
  }

  // s -> infinity limit is -1/2.
  CHECK(thermal_altsum(1e8, 1.0, pol) == rel(-0.5, 1e-10));
  CHECK_THROWS_AS(thermal_altsum(0.0, 1.0, pol), DomainError);
  CHECK_THROWS_AS(thermal_altsum(1.0, -1.0, pol), DomainError);
}

TEST_CASE("modified Bessel K: golden values, recurrence, asymptotics") {
  QuadratureConfig cfg;
  CHECK(bessel_k(0, 1.0, cfg) == rel(0.42102443824070834, 1e-12));
  CHECK(bessel_k(1, 1.0, cfg) == rel(0.6019072301972346, 1e-12));
  // K2 = K0 + 2 K1 / x.
  const double x = 1.5;
  CHECK(bessel_k(2, x, cfg) == rel(bessel_k(0, x, cfg) + 2.0 * bessel_k(1, x, cfg) / x, 1e-13));

  // Uniform asymptotic check at large argument (next series term ~ 2e-4).
  const double big = 20.0;
  const double asym = std::sqrt(kPi / (2.0 * big)) * std::exp(-big) * (1.0 - 1.0 / (8.0 * big));
  CHECK(bessel_k(0, big, cfg) == rel(asym, 1e-3));

  // Beyond the underflow guard the integrand is identically zero.
  CHECK(bessel_k(0, 800.0, cfg) == 0.0);

  CHECK_THROWS_AS(bessel_k(0, 0.0, cfg), DomainError);
  CHECK_THROWS_AS(bessel_k(0, -1.0, cfg), DomainError);
  CHECK_THROWS_AS(bessel_k(3, 1.0, cfg), DomainError);
}

TEST_CASE("Fermi-Dirac moment integrals: closed form vs quadrature") {
  QuadratureConfig cfg;
  CHECK(fermi_dirac_integral(1) == rel(kPi * kPi / 12.0, 1e-14));
  CHECK(fermi_dirac_integral(2) == rel(5.682196976983475, 1e-14));
  CHECK(fermi_dirac_integral(2) == rel(7.0 * std::pow(kPi, 4) / 120.0, 1e-14));
  for (int n = 1; n <= 3; ++n)
    CHECK(fermi_dirac_quadrature(n, cfg) == rel(fermi_dirac_integral(n), 1e-10));
  CHECK_THROWS_AS(fermi_dirac_integral(0), DomainError);
  CHECK_THROWS_AS(fermi_dirac_integral(7), DomainError);
}
