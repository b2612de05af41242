#pragma once

#include "magvac/quadrature.hpp"

namespace magvac {

struct SeriesPolicy {
  // Stop when |term| <= term_tol * |partial sum| + absolute floor.
  double term_tol = 1e-16;
  long long n_max = 1000000;
  // Representation switch threshold on the modular parameter 4*pi^2*s/beta^2.
  double theta_switch = 1.0;
};

// x*coth(x) - 1, >= 0; Taylor branch below x = 1e-2, stable direct formula
// above. x = 0 returns exactly 0.
double coth_m1(double x);

// Jacobi theta_2(0, 4*pi*i*s/beta^2) = sum over integer n of
// e^{-(4 pi^2 s / beta^2)(n - 1/2)^2}, summed directly.
double theta2_direct(double s, double beta, const SeriesPolicy& pol = {});

// Same function through the Poisson-resummed representation
// (pi s)^{-1/2} (beta/2) * sum over n of (-1)^n e^{-beta^2 n^2 / 4s}.
double theta2_poisson(double s, double beta, const SeriesPolicy& pol = {});

// Representation switch: direct sum when 4*pi^2*s/beta^2 >= theta_switch,
// Poisson form below.
double theta2(double s, double beta, const SeriesPolicy& pol = {});

// d/ds theta_2(0, 4*pi*i*s/beta^2) <= 0. Termwise derivative of whichever
// representation converges at the given modular parameter.
double theta2_sprime(double s, double beta, const SeriesPolicy& pol = {});

// Alternating thermal sum S(s, beta) = sum_{n>=1} (-1)^n e^{-beta^2 n^2/4s},
// resummed through the dual theta representation when beta^2/4s falls below
// theta_switch. Tends to -1/2 as s -> infinity.
double thermal_altsum(double s, double beta, const SeriesPolicy& pol = {});

// Modified Bessel K_nu for nu in {0, 1, 2} from the Sommerfeld integral
// K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt; K_2 via the recurrence
// K_2(x) = K_0(x) + 2 K_1(x)/x.
double bessel_k(int nu, double x, const QuadratureConfig& cfg = {});

// int_0^inf x^{2n-1}/(e^x+1) dx = (1-2^{1-2n})(2 pi)^{2n} |B_{2n}|/(4n),
// Bernoulli numbers tabulated for n = 1..6.
double fermi_dirac_integral(int n);

// The same integral evaluated numerically, as a cross-check twin.
double fermi_dirac_quadrature(int n, const QuadratureConfig& cfg = {});

}  // namespace magvac
