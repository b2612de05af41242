#include "magvac/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "magvac/errors.hpp"

namespace magvac {

namespace {

constexpr double kPi = std::numbers::pi;

// Alternating bracket B(c) = sum over integer n of (-1)^n e^{-c n^2}.
// Direct summation cancels catastrophically for small c (the value is
// exponentially small in 1/c while terms are O(1)); below kProductSwitch it
// is evaluated as the triple product prod_{m>=1} (1-q^{2m})(1-q^{2m-1})^2
// with q = e^{-c}.
constexpr double kProductSwitch = 5.0;

double alternating_gauss_bracket(double c, const SeriesPolicy& pol) {
  if (c >= kProductSwitch) {
    double sum = 1.0;
    for (long long n = 1; n <= pol.n_max; ++n) {
      const double term = 2.0 * ((n % 2 == 1) ? -1.0 : 1.0) * std::exp(-c * n * n);
      sum += term;
      if (std::abs(term) <= pol.term_tol * std::abs(sum) + 1e-300) break;
    }
    return sum;
  }
  double product = 1.0;
  for (long long m = 1;; ++m) {
    if (2.0 * m * c > 46.0) break;  // remaining factors are 1 to below 1e-20
    const double even = -std::expm1(-2.0 * m * c);
    const double odd = -std::expm1(-(2.0 * m - 1.0) * c);
    product *= even * odd * odd;
    if (product == 0.0) break;
  }
  return product;
}

}  // namespace

double coth_m1(double x) {
  if (x < 0.0) throw DomainError("coth_m1 requires x >= 0");
  if (x < 1e-2) {
    const double x2 = x * x;
    return x2 * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0)));
  }
  // x coth x - 1 = (x - 1) + 2x/(e^{2x} - 1); expm1 overflows to +inf for
  // large x, collapsing the correction to 0 as it should.
  return (x - 1.0) + 2.0 * x / std::expm1(2.0 * x);
}

double theta2_direct(double s, double beta, const SeriesPolicy& pol) {
  if (!(s > 0.0) || !(beta > 0.0)) throw DomainError("theta2_direct requires s > 0, beta > 0");
  const double x = 4.0 * kPi * kPi * s / (beta * beta);
  double sum = 0.0;
  for (long long n = 0; n <= pol.n_max; ++n) {
    const double half = n + 0.5;
    const double term = 2.0 * std::exp(-x * half * half);
    sum += term;
    if (term <= pol.term_tol * sum + 1e-300) break;
  }
  return sum;
}

double theta2_poisson(double s, double beta, const SeriesPolicy& pol) {
  if (!(s > 0.0) || !(beta > 0.0)) throw DomainError("theta2_poisson requires s > 0, beta > 0");
  const double c = beta * beta / (4.0 * s);
  return 0.5 * beta / std::sqrt(kPi * s) * alternating_gauss_bracket(c, pol);
}

double theta2(double s, double beta, const SeriesPolicy& pol) {
  const double x = 4.0 * kPi * kPi * s / (beta * beta);
  return x >= pol.theta_switch ? theta2_direct(s, beta, pol) : theta2_poisson(s, beta, pol);
}

double theta2_sprime(double s, double beta, const SeriesPolicy& pol) {
  if (!(s > 0.0) || !(beta > 0.0)) throw DomainError("theta2_sprime requires s > 0, beta > 0");
  const double x = 4.0 * kPi * kPi * s / (beta * beta);
  if (x >= pol.theta_switch) {
    // Termwise derivative of the direct sum; every term is negative.
    double sum = 0.0;
    for (long long n = 0; n <= pol.n_max; ++n) {
      const double half = n + 0.5;
      const double h2 = half * half;
      const double term = 2.0 * h2 * std::exp(-x * h2);
      sum += term;
      if (term <= pol.term_tol * sum + 1e-300) break;
    }
    return -(4.0 * kPi * kPi / (beta * beta)) * sum;
  }
  // Poisson branch: theta2 = (beta/2) pi^{-1/2} s^{-1/2} P(s) with
  // P = 1 + 2 sum (-1)^n E_n, E_n = e^{-beta^2 n^2/4s}. Both derivative
  // pieces are negative (P > 0, P' < 0 since the n=1 term dominates).
  const double b24s = beta * beta / (4.0 * s);
  double p = 1.0;
  double pprime = 0.0;
  for (long long n = 1; n <= pol.n_max; ++n) {
    const double sign = (n % 2 == 1) ? -1.0 : 1.0;
    const double en = std::exp(-b24s * n * n);
    const double tp = 2.0 * sign * en;
    p += tp;
    pprime += tp * (b24s * n * n / s);
    if (std::abs(tp) <= pol.term_tol * std::abs(p) + 1e-300) break;
  }
  const double pref = 0.5 * beta / std::sqrt(kPi);
  return pref * (-0.5 * std::pow(s, -1.5) * p + pprime / std::sqrt(s));
}

double thermal_altsum(double s, double beta, const SeriesPolicy& pol) {
  if (!(s > 0.0) || !(beta > 0.0)) throw DomainError("thermal_altsum requires s > 0, beta > 0");
  const double c = beta * beta / (4.0 * s);
  if (c >= pol.theta_switch) {
    double sum = 0.0;
    for (long long n = 1; n <= pol.n_max; ++n) {
      const double term = ((n % 2 == 1) ? -1.0 : 1.0) * std::exp(-c * n * n);
      sum += term;
      if (std::abs(term) <= pol.term_tol * std::abs(sum) + 1e-300) break;
    }
    return sum;
  }
  // Resummed through the dual theta series, which converges in O(1) terms
  // here: 2S + 1 = B(c) = (2 sqrt(pi s)/beta) theta2_direct(s, beta).
  return 0.5 * (2.0 * std::sqrt(kPi * s) / beta * theta2_direct(s, beta, pol) - 1.0);
}

double bessel_k(int nu, double x, const QuadratureConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("bessel_k requires x > 0");
  if (nu < 0 || nu > 2) throw DomainError("bessel_k supports nu in {0, 1, 2}");
  if (nu == 2) return bessel_k(0, x, cfg) + 2.0 * bessel_k(1, x, cfg) / x;

  auto integrand = [nu, x](double t) {
    const double ch = std::cosh(t);
    if (x * ch > 745.0) return 0.0;  // underflows before cosh(nu t) overflows
    return std::exp(-x * ch) * (nu == 0 ? 1.0 : std::cosh(static_cast<double>(nu) * t));
  };
  return integrate_semiinf(integrand, cfg, TailKind::exponential).value;
}

double fermi_dirac_integral(int n) {
  // |B_2|..|B_12|.
  static constexpr double kAbsBernoulli[6] = {1.0 / 6.0,  1.0 / 30.0, 1.0 / 42.0,
                                              1.0 / 30.0, 5.0 / 66.0, 691.0 / 2730.0};
  if (n < 1 || n > 6) throw DomainError("fermi_dirac_integral tabulated for n in 1..6");
  const double two_pi_pow = std::pow(2.0 * kPi, 2 * n);
  return (1.0 - std::pow(2.0, 1 - 2 * n)) * two_pi_pow * kAbsBernoulli[n - 1] / (4.0 * n);
}

double fermi_dirac_quadrature(int n, const QuadratureConfig& cfg) {
  if (n < 1 || n > 6) throw DomainError("fermi_dirac_quadrature tabulated for n in 1..6");
  auto integrand = [n](double x) {
    if (x > 800.0) return 0.0;  // e^{-x} underflows before x^{2n-1} overflows
    const double ex = std::exp(-x);
    return std::pow(x, 2 * n - 1) * ex / (1.0 + ex);
  };
  return integrate_semiinf(integrand, cfg, TailKind::exponential).value;
}

}  // namespace magvac
