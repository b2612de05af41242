#pragma once

#include <functional>
#include <string>
#include <vector>

#include "magvac/pv_scheme.hpp"
#include "magvac/quadrature.hpp"
#include "magvac/special_functions.hpp"

namespace magvac {

// Fermionic frequency omega = (2k-1) pi / beta; never zero, and
// omega(k) = -omega(1-k).
struct MatsubaraIndex {
  long long k = 1;
  double beta = 1.0;
  double omega() const;
};

// Symmetric partial sum of x tanh x = sum_k 4x^2/((2k-1)^2 pi^2 + 4x^2) over
// |2k-1| <= 2K-1; tail bounded by 2x^2/(pi^2 K).
double tanh_partial_sum(double x, long long K);

// Fixed-grid composite Simpson rule, deliberately independent of the adaptive
// engine. n must be even and >= 2.
double reference_quadrature(const std::function<double(double)>& f, double a, double b, int n);

// Cross-representation oracle for mt_response: the b-average
// (8 pi / q^2) (1/beta) int_0^beta GT(q,b) db taken termwise in the Bessel
// series (each b-integral is exact: int (K0 - x K1) dx = x K0), then the
// u-integral by the Simpson reference rule.
double mt_oracle(double q, double beta, const PauliVillarsScheme& scheme,
                 const QuadratureConfig& cfg, const SeriesPolicy& pol = {});

// Termwise-Bessel closed form of ft_pv (valid for a > 0): expand
// coth(sa) = 1 + 2 sum_l e^{-2lsa} and integrate each s-term through
// int_0^inf s^{nu-1} e^{-gamma s - alpha/s} ds = 2 (alpha/gamma)^{nu/2}
// K_nu(2 sqrt(alpha gamma)).
double ft_pv_bessel_oracle(double a, double beta, const PauliVillarsScheme& scheme,
                           const QuadratureConfig& cfg, const SeriesPolicy& pol = {});

// Ascending small-x series for K0/K1; test oracle for the Sommerfeld
// quadrature route, accurate to ~1e-12 for x <= 2.
double bessel_k0_series(double x);
double bessel_k1_series(double x);

struct OracleCheck {
  std::string name;
  double value = 0.0;
  double oracle = 0.0;
  double rel_diff = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// The full identity suite behind the `selftest` subcommand.
std::vector<OracleCheck> run_selftest(const PauliVillarsScheme& scheme,
                                      const QuadratureConfig& cfg, const SeriesPolicy& pol = {});

}  // namespace magvac
