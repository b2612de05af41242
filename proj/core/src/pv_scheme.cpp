#include "magvac/pv_scheme.hpp"

#include <cmath>

#include "magvac/errors.hpp"

namespace magvac {

PauliVillarsScheme make_scheme(double m0, double m1, double m2) {
  if (!(m0 > 0.0)) throw DomainError("make_scheme requires m0 > 0");
  if (!(m0 < m1 && m1 < m2))
    throw DegenerateMasses("make_scheme requires strictly increasing masses m0 < m1 < m2");

  PauliVillarsScheme scheme;
  scheme.masses = {m0, m1, m2};

  // Closed forms solving sum(c)=0, sum(c m^2)=0 with c0=1.
  const double s0 = m0 * m0, s1 = m1 * m1, s2 = m2 * m2;
  scheme.coeffs = {1.0, (s0 - s2) / (s2 - s1), (s1 - s0) / (s2 - s1)};

  double log_lambda2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double c = scheme.coeffs[j];
    const double m2j = scheme.masses[j] * scheme.masses[j];
    log_lambda2 -= c * std::log(m2j);
    scheme.moment4 += c * m2j * m2j;
    scheme.moment6 += c * m2j * m2j * m2j;
    scheme.moment8 += c * m2j * m2j * m2j * m2j;
  }
  scheme.lambda = std::exp(0.5 * log_lambda2);
  return scheme;
}

double averaged_cutoff(const PauliVillarsScheme& scheme) { return scheme.lambda; }

double pv_exp_sum(const PauliVillarsScheme& scheme, double s) {
  if (s < 0.0) throw DomainError("pv_exp_sum requires s >= 0");
  const double m2sq = scheme.masses[2] * scheme.masses[2];
  if (s * m2sq < 1e-3) {
    // The three exponentials cancel to O(s^2); sum the surviving moments.
    return s * s * (0.5 * scheme.moment4 +
                    s * (-scheme.moment6 / 6.0 + s * scheme.moment8 / 24.0));
  }
  double sum = 0.0;
  for (int j = 0; j < 3; ++j)
    sum += scheme.coeffs[j] * std::exp(-s * scheme.masses[j] * scheme.masses[j]);
  return sum;
}

}  // namespace magvac
