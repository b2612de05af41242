#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "doctest.h"
#include "magvac/errors.hpp"
#include "magvac/oracles.hpp"
#include "magvac/response.hpp"
#include "test_util.hpp"

using namespace magvac;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

PauliVillarsScheme standard_scheme() { return make_scheme(1.0, 2.0, 3.0); }
}  // namespace

TEST_CASE("vacuum response: anchor value, golden points, bounds, decay") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;

  const double anchor = 2.0 * std::log(scheme.lambda) / (3.0 * kPi);
  const double m0_zero = m0_response(0.0, scheme, cfg);
  CHECK(m0_zero == rel(anchor, 1e-10));
  CHECK(m0_zero == rel(0.09546497913640445, 1e-12));
  CHECK(m0_response(1.0, scheme, cfg) == rel(0.08310049460939976, 1e-12));

  // Positive, bounded by the q = 0 value, monotonically decreasing sample.
  double prev = m0_zero;
  for (int i = 0; i < 25; ++i) {
    const double q = 1e-2 * std::pow(1e4, i / 24.0);
    const double v = m0_response(q, scheme, cfg);
    CHECK(v > 0.0);
    CHECK(v <= m0_zero * (1.0 + 1e-14));
    CHECK(v <= prev * (1.0 + 1e-12));
    prev = v;
  }

  // Large-q falloff: value and decay floor.
  CHECK(m0_response(1e3, scheme, cfg) == rel(1.7333355467937107e-10, 1e-3));
  CHECK(std::abs(m0_response(1e4, scheme, cfg)) < 1e-12);

  CHECK_THROWS_AS(m0_response(-1.0, scheme, cfg), DomainError);
}

TEST_CASE("thermal response: golden grid across (q, beta)") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;

  CHECK(mt_response(1.0, 1.0, scheme, cfg) == rel(-0.067741441638890745, 1e-9));
  CHECK(mt_response(2.0, 2.0, scheme, cfg) == rel(-0.016139737962377321, 1e-9));
  CHECK(mt_response(0.5, 0.5, scheme, cfg) == rel(-0.090181959759226382, 1e-9));
  CHECK(mt_response(0.5, 2.0, scheme, cfg) == rel(-0.034702715677338451, 1e-9));
  CHECK(mt_response(2.0, 0.5, scheme, cfg) == rel(-0.057525214976599376, 1e-9));
  CHECK(mt_response(0.0, 1.0, scheme, cfg) == rel(-0.0795537215039, 1e-9));
  // Cold limit: exponentially small.
  CHECK(mt_response(1.0, 10.0, scheme, cfg) == rel(-2.8931445351229017e-06, 1e-6));

  // Widely separated regulator masses.
  const auto wide = make_scheme(1.0, 100.0, 1000.0);
  CHECK(mt_response(1.0, 1.0, wide, cfg) == rel(-0.12618132168269702, 1e-9));
  for (double q : {0.1, 1.0, 5.0}) CHECK(mt_response(q, 1.0, wide, cfg) < 0.0);

  CHECK_THROWS_AS(mt_response(-1.0, 1.0, scheme, cfg), DomainError);
  CHECK_THROWS_AS(mt_response(1.0, 0.0, scheme, cfg), DomainError);
  CHECK_THROWS_AS(mt_response(1.0, -2.0, scheme, cfg), DomainError);
}

TEST_CASE("thermal response agrees with the termwise Bessel-average oracle") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;
  SeriesPolicy pol;
  const std::pair<double, double> points[] = {{1.0, 1.0}, {2.0, 2.0}, {0.5, 0.5}, {2.0, 0.5}};
  for (auto [q, beta] : points) {
    const double engine = mt_response(q, beta, scheme, cfg);
    const double oracle = mt_oracle(q, beta, scheme, cfg, pol);
    CHECK(engine == rel(oracle, 1e-7));
  }
}

TEST_CASE("thermal response bound: magnitude and temperature scaling") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;

  CHECK(mt_bound(scheme, 1.0) == rel(14.91134119414631, 1e-6));

  for (double beta : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double bound = mt_bound(scheme, beta);
    for (int i = 0; i < 5; ++i) {
      const double q = 1e-2 * std::pow(5e3, i / 4.0);
      CHECK(std::abs(mt_response(q, beta, scheme, cfg)) <= bound);
    }
  }

  // |MT(q, beta)| * sqrt(beta) stays below the beta = 1 constant.
  const double k = mt_bound(scheme, 1.0);
  for (double beta : {1.0, 4.0, 16.0, 64.0})
    CHECK(std::abs(mt_response(1.0, beta, scheme, cfg)) * std::sqrt(beta) <= k);

  CHECK_THROWS_AS(mt_bound(scheme, 0.0), DomainError);
}

TEST_CASE("combined response point: assembly, error budget, cold limit") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;

  const ResponsePoint p = response_point(1.0, 1.0, scheme, cfg);
  CHECK(p.q == 1.0);
  CHECK(p.m0_value == rel(0.08310049460939976, 1e-12));
  CHECK(p.mt_value == rel(-0.067741441638890745, 1e-9));
  CHECK(p.total == p.m0_value + p.mt_value);
  CHECK(p.err >= 0.0);
  CHECK(p.err < 1e-8);
  CHECK(p.converged);

  const ResponsePoint cold = response_point(1.0, kInf, scheme, cfg);
  CHECK(cold.mt_value == 0.0);
  CHECK(cold.total == cold.m0_value);

  CHECK_THROWS_AS(response_point(-1.0, 1.0, scheme, cfg), DomainError);
  CHECK_THROWS_AS(response_point(1.0, 0.0, scheme, cfg), DomainError);
}

TEST_CASE("attenuation function: golden value, nonnegativity, domain") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;
  SeriesPolicy pol;

  CHECK(g_total(1.0, 1.0, scheme, cfg, pol) == rel(0.002144935717015142, 1e-9));
  const std::pair<double, double> points[] = {{0.5, 0.5}, {1.0, 2.0}, {3.0, 1.0}, {1.0, 0.5}};
  for (auto [q, beta] : points) CHECK(g_total(q, beta, scheme, cfg, pol) >= -1e-12);

  CHECK_THROWS_AS(g_total(0.0, 1.0, scheme, cfg, pol), DomainError);
  CHECK_THROWS_AS(g_total(1.0, 0.0, scheme, cfg, pol), DomainError);
  CHECK_THROWS_AS(g_total(1.0, kInf, scheme, cfg, pol), DomainError);
}

TEST_CASE("thermal attenuation: Bessel series and cosh-kernel forms coincide") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;
  SeriesPolicy pol;

  CHECK(gt_bessel(1.0, 1.0, scheme, cfg, pol) == rel(-0.0011615279056019999, 1e-8));
  CHECK(gt_coshint(2.0, 0.5, scheme, cfg) == rel(-0.0081804523695938412, 1e-8));

  const std::pair<double, double> points[] = {{1.0, 1.0}, {2.0, 0.5}, {0.5, 2.0}, {2.0, 2.0}};
  for (auto [q, beta] : points) {
    const double series = gt_bessel(q, beta, scheme, cfg, pol);
    const double direct = gt_coshint(q, beta, scheme, cfg);
    CHECK(series == rel(direct, 1e-8));
  }

  // With widely separated regulators the thermal part changes sign; both
  // representations must agree on the observed positive value.
  const auto wide = make_scheme(1.0, 10.0, 100.0);
  const double series = gt_bessel(1.0, 1.0, wide, cfg, pol);
  const double direct = gt_coshint(1.0, 1.0, wide, cfg);
  CHECK(series > 0.0);
  CHECK(series == rel(0.0015872377944415126, 1e-8));
  CHECK(series == rel(direct, 1e-8));

  CHECK_THROWS_AS(gt_bessel(0.0, 1.0, scheme, cfg, pol), DomainError);
  CHECK_THROWS_AS(gt_coshint(0.0, 1.0, scheme, cfg), DomainError);
}

TEST_CASE("inverse-temperature average of G reproduces the dielectric response") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;
  SeriesPolicy pol;

  const double q = 1.0, beta = 1.0;
  QuadratureConfig outer = cfg;
  outer.rel_tol = 1e-9;
  auto integrand = [&](double b) { return g_total(q, b, scheme, cfg, pol); };
  const double avg = integrate_finite(integrand, 0.0, beta, outer).value / beta;
  const double rhs =
      q * q / (8.0 * kPi) * (m0_response(q, scheme, cfg) + mt_response(q, beta, scheme, cfg));
  CHECK(avg == rel(rhs, 1e-6));
}

TEST_CASE("renormalized vacuum-polarization kernel") {
  QuadratureConfig cfg;

  CHECK(uehling(0.0, cfg) == 0.0);

  double prev = 0.0;
  for (double q : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    const double u = uehling(q, cfg);
    CHECK(u > prev);
    prev = u;
  }

  // Independent fixed-grid evaluation.
  const double q = 2.0;
  auto integrand = [q](double z) {
    const double z2 = z * z;
    return (z2 - z2 * z2 / 3.0) / (1.0 + q * q * (1.0 - z2) / 4.0);
  };
  const double ref = q * q / (4.0 * kPi) * reference_quadrature(integrand, 0.0, 1.0, 512);
  CHECK(uehling(q, cfg) == rel(ref, 1e-8));

  // For regulators far above the probe scale the subtracted response is the
  // universal kernel: M0(0) - M0(q) ~ U(q).
  const auto wide = make_scheme(1.0, 100.0, 1000.0);
  const double anchor = 2.0 * std::log(wide.lambda) / (3.0 * kPi);
  for (double qq : {0.0, 1.0, 2.5, 5.0})
    CHECK(std::abs(anchor - m0_response(qq, wide, cfg) - uehling(qq, cfg)) <= 1e-3);

  CHECK_THROWS_AS(uehling(-1.0, cfg), DomainError);
}

TEST_CASE("quadratic spectral energy functional") {
  const auto scheme = standard_scheme();
  QuadratureConfig cfg;

  RadialSpectrum zero{[](double) { return 0.0; }, 8.0};
  CHECK(fpv2(zero, 1.0, scheme, cfg) == 0.0);

  RadialSpectrum gauss{[](double q) { return std::exp(-q * q); }, 8.0};
  const double base = fpv2(gauss, 1.0, scheme, cfg);
  CHECK(base == rel(0.0033485630612795133, 1e-9));
  CHECK(base > 0.0);

  RadialSpectrum doubled{[](double q) { return 2.0 * std::exp(-q * q); }, 8.0};
  CHECK(fpv2(doubled, 1.0, scheme, cfg) == rel(2.0 * base, 1e-12));

  // Fixed-grid oracle assembled from the public response evaluations.
  auto outer = [&](double q) {
    const double total = m0_response(q, scheme, cfg) + mt_response(q, 1.0, scheme, cfg);
    return total * std::exp(-q * q) * q * q;
  };
  const double ref = 0.5 * reference_quadrature(outer, 0.0, 8.0, 1024);
  CHECK(base == rel(ref, 2e-6));

  RadialSpectrum empty{{}, 8.0};
  CHECK_THROWS_AS(fpv2(empty, 1.0, scheme, cfg), DomainError);
  RadialSpectrum badmax{[](double) { return 1.0; }, 0.0};
  CHECK_THROWS_AS(fpv2(badmax, 1.0, scheme, cfg), DomainError);
  CHECK_THROWS_AS(fpv2(gauss, 0.0, scheme, cfg), DomainError);
}
