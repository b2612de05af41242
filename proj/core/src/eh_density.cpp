#include "magvac/eh_density.hpp"

#include <cmath>
#include <numbers>

#include "magvac/errors.hpp"

namespace magvac {

namespace {

constexpr double kPi = std::numbers::pi;

// coth_m1(x) - x^2/3 with the two leading series terms fused below the same
// x = 1e-2 crossover, avoiding the cancellation of the subtracted x^2/3.
double coth_m1_counterterm(double x) {
  if (x < 1e-2) {
    const double x2 = x * x;
    return x2 * x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0));
  }
  return coth_m1(x) - x * x / 3.0;
}

struct DensityTerm {
  double value = 0.0;
  double err = 0.0;
  bool converged = true;
};

DensityTerm f0_pv_core(double a, const PauliVillarsScheme& scheme, const QuadratureConfig& cfg) {
  if (a == 0.0) return {};
  auto integrand = [&scheme, a](double s) {
    const double weight = pv_exp_sum(scheme, s);
    if (weight == 0.0) return 0.0;
    return weight * coth_m1(s * a) / (s * s * s);
  };
  const IntegralResult r = integrate_semiinf(integrand, cfg, TailKind::exponential);
  const double pref = 1.0 / (8.0 * kPi * kPi);
  return {pref * r.value, pref * r.error_estimate, r.converged};
}

DensityTerm ft_pv_core(double a, double beta, const PauliVillarsScheme& scheme,
                       const QuadratureConfig& cfg, const SeriesPolicy& pol) {
  if (a == 0.0) return {};
  auto integrand = [&](double s) {
    const double weight = pv_exp_sum(scheme, s);
    if (weight == 0.0) return 0.0;
    return weight * coth_m1(s * a) * thermal_altsum(s, beta, pol) / (s * s * s);
  };
  // Split where the thermal sum changes representation scale, so each piece
  // sees one dominant decay.
  const double split = beta * beta / 4.0;
  const IntegralResult head = integrate_finite(integrand, 0.0, split, cfg);
  const IntegralResult tail = integrate_semiinf(integrand, cfg, TailKind::exponential, split);
  const double pref = 1.0 / (4.0 * kPi * kPi);
  return {pref * (head.value + tail.value),
          pref * (head.error_estimate + tail.error_estimate),
          head.converged && tail.converged};
}

}  // namespace

double f0_single(double a, double m, const QuadratureConfig& cfg) {
  a = std::abs(a);
  if (!(m > 0.0)) throw DomainError("f0_single requires m > 0");
  if (a == 0.0) return 0.0;
  const double m2 = m * m;
  auto integrand = [m2, a](double s) {
    const double e = std::exp(-s * m2);
    if (e == 0.0) return 0.0;
    return e * coth_m1_counterterm(s * a) / (s * s * s);
  };
  return integrate_semiinf(integrand, cfg, TailKind::exponential).value / (8.0 * kPi * kPi);
}

double f0_pv(double a, const PauliVillarsScheme& scheme, const QuadratureConfig& cfg) {
  return f0_pv_core(std::abs(a), scheme, cfg).value;
}

double ft_pv(double a, double beta, const PauliVillarsScheme& scheme, const QuadratureConfig& cfg,
             const SeriesPolicy& pol) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("ft_pv requires finite beta > 0");
  return ft_pv_core(std::abs(a), beta, scheme, cfg, pol).value;
}

double ft_vacuum_single(double beta, double m, const QuadratureConfig& cfg,
                        const SeriesPolicy& pol) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("ft_vacuum_single requires finite beta > 0");
  if (m < 0.0) throw DomainError("ft_vacuum_single requires m >= 0");
  if (m == 0.0) return -7.0 * kPi * kPi / (180.0 * beta * beta * beta * beta);

  double sum = 0.0;
  for (long long n = 1; n <= pol.n_max; ++n) {
    const double x = m * beta * static_cast<double>(n);
    const double term = ((n % 2 == 1) ? -1.0 : 1.0) / static_cast<double>(n * n) *
                        bessel_k(2, x, cfg);
    sum += term;
    if (std::abs(term) <= pol.term_tol * std::abs(sum) + 1e-300) break;
  }
  return 2.0 * m * m / (kPi * kPi * beta * beta) * sum;
}

DensityPoint total_density(double a, double beta, const PauliVillarsScheme& scheme,
                           const QuadratureConfig& cfg, const SeriesPolicy& pol) {
  if (!(beta > 0.0)) throw DomainError("total_density requires beta > 0");
  a = std::abs(a);

  DensityPoint point;
  point.a = a;
  point.beta = beta;
  point.extrapolated = a > scheme.masses[2] * scheme.masses[2];

  const DensityTerm f0 = f0_pv_core(a, scheme, cfg);
  point.f0 = f0.value;
  point.converged = f0.converged;
  if (std::isfinite(beta)) {
    const DensityTerm ft = ft_pv_core(a, beta, scheme, cfg, pol);
    point.ft = ft.value;
    point.converged = point.converged && ft.converged;
  }
  point.total = point.f0 + point.ft;
  return point;
}

}  // namespace magvac
