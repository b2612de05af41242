#include "magvac/oracles.hpp"

#include <cmath>
#include <numbers>

#include "magvac/eh_density.hpp"
#include "magvac/errors.hpp"
#include "magvac/response.hpp"

namespace magvac {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

double rel_or_abs_diff(double value, double oracle) {
  return std::abs(value - oracle) / std::max(std::abs(oracle), 1e-300);
}

OracleCheck make_check(std::string name, double value, double oracle, double tol,
                       bool absolute = false) {
  OracleCheck c;
  c.name = std::move(name);
  c.value = value;
  c.oracle = oracle;
  c.rel_diff = absolute ? std::abs(value - oracle) : rel_or_abs_diff(value, oracle);
  c.tol = tol;
  c.pass = std::isfinite(c.rel_diff) && c.rel_diff <= tol;
  return c;
}

}  // namespace

double MatsubaraIndex::omega() const {
  if (!(beta > 0.0)) throw DomainError("MatsubaraIndex requires beta > 0");
  return static_cast<double>(2 * k - 1) * kPi / beta;
}

double tanh_partial_sum(double x, long long K) {
  if (K < 1) throw DomainError("tanh_partial_sum requires K >= 1");
  // x tanh x = sum over all fermionic frequencies (beta = 2) of
  // x^2 / (omega_k^2 + x^2); sum the pair k, 1-k symmetrically.
  double sum = 0.0;
  for (long long k = K; k >= 1; --k) {
    const double w_pos = MatsubaraIndex{k, 2.0}.omega();
    const double w_neg = MatsubaraIndex{1 - k, 2.0}.omega();
    sum += x * x / (w_pos * w_pos + x * x) + x * x / (w_neg * w_neg + x * x);
  }
  return sum;
}

double reference_quadrature(const std::function<double(double)>& f, double a, double b, int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("reference_quadrature needs even n >= 2");
  if (!(a < b)) throw DomainError("reference_quadrature needs a < b");
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += ((i % 2 == 1) ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

double mt_oracle(double q, double beta, const PauliVillarsScheme& scheme,
                 const QuadratureConfig& cfg, const SeriesPolicy& pol) {
  if (!(q > 0.0)) throw DomainError("mt_oracle requires q > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("mt_oracle requires finite beta > 0");

  constexpr int kSimpsonPanels = 256;
  double sum = 0.0;
  for (long long n = 1; n <= pol.n_max; ++n) {
    auto integrand = [&](double u) {
      const double w = u * (1.0 - u);
      double acc = 0.0;
      for (int j = 0; j < 3; ++j) {
        const double rho = std::sqrt(scheme.masses[j] * scheme.masses[j] + w * q * q);
        const double x = beta * static_cast<double>(n) * rho;
        if (x > 745.0) continue;
        acc += scheme.coeffs[j] * bessel_k(0, x, cfg);
      }
      return acc * w;
    };
    const double term =
        ((n % 2 == 1) ? -1.0 : 1.0) * reference_quadrature(integrand, 0.0, 1.0, kSimpsonPanels);
    sum += term;
    if (std::abs(term) <= pol.term_tol * std::abs(sum) + 1e-300) break;
  }
  return 8.0 / kPi * sum;
}

double ft_pv_bessel_oracle(double a, double beta, const PauliVillarsScheme& scheme,
                           const QuadratureConfig& cfg, const SeriesPolicy& pol) {
  if (!(a > 0.0)) throw DomainError("ft_pv_bessel_oracle requires a > 0");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("ft_pv_bessel_oracle requires finite beta > 0");

  double sum = 0.0;
  for (long long n = 1; n <= pol.n_max; ++n) {
    const double bn = beta * static_cast<double>(n);
    double inner = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double m = scheme.masses[j];
      double term_j = 0.0;
      if (bn * m <= 745.0) {
        term_j += 4.0 * a * m / bn * bessel_k(1, bn * m, cfg);
        term_j -= 8.0 * m * m / (bn * bn) * bessel_k(2, bn * m, cfg);
      }
      double ladder = 0.0;
      for (long long l = 1; l <= pol.n_max; ++l) {
        const double mu = std::sqrt(m * m + 2.0 * static_cast<double>(l) * a);
        if (bn * mu > 745.0) break;
        const double rung = 8.0 * a * mu / bn * bessel_k(1, bn * mu, cfg);
        ladder += rung;
        if (std::abs(rung) <= pol.term_tol * std::abs(ladder) + 1e-300) break;
        if (l == pol.n_max) throw SeriesTruncation("ft_pv_bessel_oracle ladder sum stalled");
      }
      term_j += ladder;
      inner += scheme.coeffs[j] * term_j;
    }
    const double term = ((n % 2 == 1) ? -1.0 : 1.0) * inner;
    sum += term;
    if (std::abs(term) <= pol.term_tol * std::abs(sum) + 1e-300) break;
  }
  return sum / (4.0 * kPi * kPi);
}

double bessel_k0_series(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0_series requires x > 0");
  const double t = 0.25 * x * x;
  double term = 1.0;  // t^k / (k!)^2
  double i0 = 1.0;
  double sum = 0.0;
  double hk = 0.0;
  for (int k = 1; k <= 200; ++k) {
    term *= t / (static_cast<double>(k) * k);
    hk += 1.0 / k;
    i0 += term;
    sum += term * hk;
    if (term * (hk + 1.0) <= 1e-18 * (std::abs(sum) + i0)) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * i0 + sum;
}

double bessel_k1_series(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k1_series requires x > 0");
  const double t = 0.25 * x * x;
  double term = 1.0;  // t^k / (k! (k+1)!)
  double i1_sum = 1.0;
  double hk = 0.0;
  double hk1 = 1.0;
  double psi_sum = -2.0 * kEulerGamma + hk + hk1;  // k = 0 contribution
  for (int k = 1; k <= 200; ++k) {
    term *= t / (static_cast<double>(k) * (k + 1));
    hk += 1.0 / k;
    hk1 += 1.0 / (k + 1);
    i1_sum += term;
    psi_sum += (-2.0 * kEulerGamma + hk + hk1) * term;
    if (term * (std::abs(hk + hk1) + 1.0) <= 1e-18 * (std::abs(psi_sum) + i1_sum)) break;
  }
  const double i1 = 0.5 * x * i1_sum;
  return std::log(0.5 * x) * i1 + 1.0 / x - 0.25 * x * psi_sum;
}

std::vector<OracleCheck> run_selftest(const PauliVillarsScheme& scheme,
                                      const QuadratureConfig& cfg, const SeriesPolicy& pol) {
  std::vector<OracleCheck> checks;
  const double m2 = scheme.masses[2];

  // Regulator sum rules (absolute diffs; the sums telescope to zero).
  {
    const double c_sum = scheme.coeffs[0] + scheme.coeffs[1] + scheme.coeffs[2];
    double cm2_sum = 0.0;
    for (int j = 0; j < 3; ++j)
      cm2_sum += scheme.coeffs[j] * scheme.masses[j] * scheme.masses[j];
    checks.push_back(make_check("scheme_coeff_sum", c_sum, 0.0, 1e-12, true));
    checks.push_back(
        make_check("scheme_mass_moment", cm2_sum / (m2 * m2), 0.0, 1e-12, true));
  }

  // Quadrature engine on closed-form integrals.
  checks.push_back(make_check(
      "quadrature_cubic",
      integrate_finite([](double x) { return x * x * x; }, 0.0, 1.0, cfg).value, 0.25, 1e-13));
  checks.push_back(make_check(
      "quadrature_exp_tail",
      integrate_semiinf([](double s) { return std::exp(-s); }, cfg, TailKind::exponential).value,
      1.0, 1e-9));

  // Dual theta representations at the modular crossover x = pi.
  {
    const double beta = 2.0;
    const double s = beta * beta / (4.0 * kPi);
    checks.push_back(make_check("theta2_modular", theta2_direct(s, beta, pol),
                                theta2_poisson(s, beta, pol), 1e-12));
    const double h = 1e-5;
    const double fd = (theta2(s + h, beta, pol) - theta2(s - h, beta, pol)) / (2.0 * h);
    checks.push_back(make_check("theta2_sprime_fdiff", theta2_sprime(s, beta, pol), fd, 1e-7));
  }

  // The alternating thermal sum against its defining series in the resummed
  // regime (beta^2/4s = 1/2, below the representation switch).
  {
    const double beta = 1.0, s = 0.5;
    const double c = beta * beta / (4.0 * s);
    double direct = 0.0;
    for (int n = 1; n <= 40; ++n)
      direct += ((n % 2 == 1) ? -1.0 : 1.0) * std::exp(-c * n * n);
    checks.push_back(make_check("thermal_altsum_dual", thermal_altsum(s, beta, pol), direct, 1e-12));
  }

  // Bessel route: Sommerfeld quadrature vs ascending series, plus the nu = 2
  // recurrence against the direct cosh(2t) integral.
  checks.push_back(make_check("bessel_k0_route", bessel_k(0, 1.0, cfg), bessel_k0_series(1.0), 1e-9));
  checks.push_back(make_check("bessel_k1_route", bessel_k(1, 1.0, cfg), bessel_k1_series(1.0), 1e-9));
  {
    const double x = 1.5;
    const double direct =
        integrate_semiinf(
            [x](double t) {
              const double c = std::cosh(t);
              if (x * c > 745.0) return 0.0;
              return std::exp(-x * c) * std::cosh(2.0 * t);
            },
            cfg, TailKind::exponential)
            .value;
    checks.push_back(make_check("bessel_k2_recurrence", bessel_k(2, x, cfg), direct, 1e-9));
  }

  // Fermionic closed forms.
  checks.push_back(make_check("fermi_dirac_n1", fermi_dirac_quadrature(1, cfg),
                              fermi_dirac_integral(1), 1e-9));
  checks.push_back(make_check("fermi_dirac_n2", fermi_dirac_quadrature(2, cfg),
                              fermi_dirac_integral(2), 1e-9));

  // Matsubara machinery: antisymmetry and the x tanh x resolvent sum.
  {
    const MatsubaraIndex plus{7, 2.3};
    const MatsubaraIndex minus{-6, 2.3};
    checks.push_back(
        make_check("matsubara_antisymmetry", plus.omega() + minus.omega(), 0.0, 1e-14, true));
    const double x = 1.0;
    const long long K = 100000;
    const double tail_bound = 2.0 * x * x / (kPi * kPi * static_cast<double>(K));
    checks.push_back(make_check("tanh_resolvent_sum", tanh_partial_sum(x, K), x * std::tanh(x),
                                1.3 * tail_bound, true));
  }

  // Thermal response: occupation-integral route vs termwise-Bessel average.
  checks.push_back(make_check("mt_vs_bessel_average", mt_response(1.0, 1.0, scheme, cfg),
                              mt_oracle(1.0, 1.0, scheme, cfg, pol), 1e-7));
  // Ratio |MT| / bound must stay below 1; reported as an absolute deviation
  // from 0 so the pass condition is the bound itself.
  checks.push_back(make_check("mt_bound_margin",
                              std::abs(mt_response(1.0, 0.25, scheme, cfg)) /
                                  mt_bound(scheme, 0.25),
                              0.0, 1.0, true));

  // Thermal screening function: cosh-integral vs Bessel-series representation.
  checks.push_back(make_check("gt_representations", gt_coshint(1.0, 1.0, scheme, cfg),
                              gt_bessel(1.0, 1.0, scheme, cfg, pol), 1e-8));

  // Thermal energy density: proper-time quadrature vs termwise Bessel form.
  checks.push_back(make_check("ft_vs_bessel", ft_pv(1.0, 1.0, scheme, cfg, pol),
                              ft_pv_bessel_oracle(1.0, 1.0, scheme, cfg, pol), 1e-8));

  // Quadratic small-field coefficient of the regulated vacuum density
  // (the retained charge-renormalization term log(lambda)/12 pi^2).
  {
    const double a = 1e-3;
    const double coeff = f0_pv(a, scheme, cfg) / (a * a);
    checks.push_back(
        make_check("f0_quadratic_coeff", coeff, std::log(scheme.lambda) / (12.0 * kPi * kPi), 1e-4));
  }

  return checks;
}

}  // namespace magvac
