#include "magvac/response.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "magvac/errors.hpp"

namespace magvac {

namespace {

constexpr double kPi = std::numbers::pi;

// rho_j^2 = m_j^2 + u(1-u) q^2.
double rho_sq(const PauliVillarsScheme& scheme, int j, double u, double q) {
  const double m = scheme.masses[j];
  return m * m + u * (1.0 - u) * q * q;
}

// Fermi-Dirac occupation, overflow-free for any y >= 0.
double fermi_occupation(double y) {
  if (y > 745.0) return 0.0;
  const double e = std::exp(-y);
  return e / (1.0 + e);
}

// e^{-y}(y - 1 - e^{-y})/(1 + e^{-y})^2, the thermal kernel of gt_coshint;
// bounded (|.| <= 1/2 at y = 0) and exponentially decaying.
double gt_kernel(double y) {
  if (y > 745.0) return 0.0;
  const double e = std::exp(-y);
  const double d = 1.0 + e;
  return e * (y - 1.0 - e) / (d * d);
}

struct IteratedResult {
  double value = 0.0;
  double err = 0.0;
  bool converged = true;
};

IntegralResult m0_core(double q, const PauliVillarsScheme& scheme, const QuadratureConfig& cfg) {
  auto integrand = [&scheme, q](double u) {
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) sum += scheme.coeffs[j] * std::log(rho_sq(scheme, j, u, q));
    return sum * u * (1.0 - u);
  };
  IntegralResult r = integrate_finite(integrand, 0.0, 1.0, cfg);
  r.value *= -2.0 / kPi;
  r.error_estimate *= 2.0 / kPi;
  return r;
}

IteratedResult mt_core(double q, double beta, const PauliVillarsScheme& scheme,
                       const QuadratureConfig& cfg) {
  bool inner_ok = true;
  auto outer = [&](double t) {
    const double ch = std::cosh(t);
    auto inner = [&scheme, q, beta, ch](double u) {
      double sum = 0.0;
      for (int j = 0; j < 3; ++j)
        sum += scheme.coeffs[j] *
               fermi_occupation(beta * std::sqrt(rho_sq(scheme, j, u, q)) * ch);
      return sum * u * (1.0 - u);
    };
    IntegralResult r = integrate_finite(inner, 0.0, 1.0, cfg);
    if (!r.converged) inner_ok = false;
    return r.value;
  };
  IntegralResult r = integrate_semiinf(outer, cfg, TailKind::exponential);
  return {-8.0 / kPi * r.value, 8.0 / kPi * r.error_estimate, r.converged && inner_ok};
}

}  // namespace

double m0_response(double q, const PauliVillarsScheme& scheme, const QuadratureConfig& cfg) {
  if (q < 0.0) throw DomainError("m0_response requires q >= 0");
  return m0_core(q, scheme, cfg).value;
}

double mt_response(double q, double beta, const PauliVillarsScheme& scheme,
                   const QuadratureConfig& cfg) {
  if (q < 0.0) throw DomainError("mt_response requires q >= 0");
  if (!(beta > 0.0)) throw DomainError("mt_response requires beta > 0");
  return mt_core(q, beta, scheme, cfg).value;
}

double mt_bound(const PauliVillarsScheme& scheme, double beta) {
  if (!(beta > 0.0)) throw DomainError("mt_bound requires beta > 0");
  double k = 0.0;
  for (int j = 0; j < 3; ++j)
    k += std::abs(scheme.coeffs[j]) * 32.0 / (3.0 * std::sqrt(kPi * scheme.masses[j]));
  return k / std::sqrt(beta);
}

ResponsePoint response_point(double q, double beta, const PauliVillarsScheme& scheme,
                             const QuadratureConfig& cfg) {
  if (q < 0.0) throw DomainError("response_point requires q >= 0");
  if (!(beta > 0.0)) throw DomainError("response_point requires beta > 0");

  ResponsePoint point;
  point.q = q;
  const IntegralResult m0 = m0_core(q, scheme, cfg);
  point.m0_value = m0.value;
  point.err = m0.error_estimate;
  point.converged = m0.converged;
  if (std::isfinite(beta)) {
    const IteratedResult mt = mt_core(q, beta, scheme, cfg);
    point.mt_value = mt.value;
    point.err += mt.err;
    point.converged = point.converged && mt.converged;
  }
  point.total = point.m0_value + point.mt_value;
  return point;
}

double g_total(double q, double beta, const PauliVillarsScheme& scheme,
               const QuadratureConfig& cfg, const SeriesPolicy& pol) {
  if (!(q > 0.0)) throw DomainError("g_total requires q > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("g_total requires finite beta > 0");

  const double q2 = q * q;
  auto outer = [&](double s) {
    const double weight = theta2_sprime(s, beta, pol) * std::sqrt(s) * pv_exp_sum(scheme, s);
    if (weight == 0.0) return 0.0;
    auto inner = [s, q2](double u) {
      const double w = u * (1.0 - u);
      return w * std::exp(-s * w * q2);
    };
    return weight * integrate_finite(inner, 0.0, 1.0, cfg).value;
  };
  const IntegralResult r = integrate_semiinf(outer, cfg, TailKind::exponential);
  return -q2 / (beta * std::pow(kPi, 1.5)) * r.value;
}

double gt_bessel(double q, double beta, const PauliVillarsScheme& scheme,
                 const QuadratureConfig& cfg, const SeriesPolicy& pol) {
  if (!(q > 0.0)) throw DomainError("gt_bessel requires q > 0");
  if (!(beta > 0.0)) throw DomainError("gt_bessel requires beta > 0");

  double sum = 0.0;
  for (long long n = 1;; ++n) {
    if (n > pol.n_max)
      throw SeriesTruncation("gt_bessel: n_max reached before termwise tolerance");
    const double bn = beta * static_cast<double>(n);
    auto integrand = [&scheme, q, bn, &cfg](double u) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j) {
        const double x = bn * std::sqrt(rho_sq(scheme, j, u, q));
        acc += scheme.coeffs[j] * (bessel_k(0, x, cfg) - x * bessel_k(1, x, cfg));
      }
      return acc * u * (1.0 - u);
    };
    const double term = integrate_finite(integrand, 0.0, 1.0, cfg).value;
    sum += ((n % 2 == 1) ? -1.0 : 1.0) * term;
    if (std::abs(term) <= pol.term_tol * std::abs(sum) + 1e-300) break;
  }
  return q * q / (kPi * kPi) * sum;
}

double gt_coshint(double q, double beta, const PauliVillarsScheme& scheme,
                  const QuadratureConfig& cfg) {
  if (!(q > 0.0)) throw DomainError("gt_coshint requires q > 0");
  if (!(beta > 0.0)) throw DomainError("gt_coshint requires beta > 0");

  auto outer = [&](double t) {
    const double ch = std::cosh(t);
    auto inner = [&scheme, q, beta, ch](double u) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j)
        acc += scheme.coeffs[j] * gt_kernel(beta * std::sqrt(rho_sq(scheme, j, u, q)) * ch);
      return acc * u * (1.0 - u);
    };
    return integrate_finite(inner, 0.0, 1.0, cfg).value;
  };
  const IntegralResult r = integrate_semiinf(outer, cfg, TailKind::exponential);
  return q * q / (kPi * kPi) * r.value;
}

double uehling(double q, const QuadratureConfig& cfg) {
  if (q < 0.0) throw DomainError("uehling requires q >= 0");
  if (q == 0.0) return 0.0;
  const double q2 = q * q;
  auto integrand = [q2](double z) {
    const double z2 = z * z;
    return (z2 - z2 * z2 / 3.0) / (1.0 + q2 * (1.0 - z2) / 4.0);
  };
  return q2 / (4.0 * kPi) * integrate_finite(integrand, 0.0, 1.0, cfg).value;
}

double fpv2(const RadialSpectrum& spectrum, double beta, const PauliVillarsScheme& scheme,
            const QuadratureConfig& cfg) {
  if (!spectrum.profile) throw DomainError("fpv2 requires a profile function");
  if (!(spectrum.q_max > 0.0)) throw DomainError("fpv2 requires q_max > 0");
  if (!(beta > 0.0)) throw DomainError("fpv2 requires beta > 0");

  auto integrand = [&](double q) {
    double total = m0_core(q, scheme, cfg).value;
    if (std::isfinite(beta)) total += mt_core(q, beta, scheme, cfg).value;
    return total * spectrum.profile(q) * q * q;
  };
  return 0.5 * integrate_finite(integrand, 0.0, spectrum.q_max, cfg).value;
}

}  // namespace magvac
