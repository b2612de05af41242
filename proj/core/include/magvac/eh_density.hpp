#pragma once

#include <limits>

#include "magvac/pv_scheme.hpp"
#include "magvac/quadrature.hpp"
#include "magvac/special_functions.hpp"

namespace magvac {

// beta value meaning "zero temperature": the thermal part is defined as 0.
inline constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();

struct DensityPoint {
  double a = 0.0;     // field strength |B|
  double beta = 0.0;  // may be kZeroTemperature
  double f0 = 0.0;
  double ft = 0.0;
  double total = 0.0;  // f0 + ft
  // a exceeds m2^2: outside the slowly-varying-field hypotheses, value is an
  // extrapolation.
  bool extrapolated = false;
  bool converged = true;
};

// Unregularized single-mass vacuum density
// (1/8pi^2) int_0^inf e^{-s m^2} (sa coth(sa) - 1 - (sa)^2/3) ds/s^3  <= 0.
double f0_single(double a, double m, const QuadratureConfig& cfg);

// Regularized density
// (1/8pi^2) int_0^inf (sum_j c_j e^{-s m_j^2}) (sa coth(sa) - 1) ds/s^3.
double f0_pv(double a, const PauliVillarsScheme& scheme, const QuadratureConfig& cfg);

// Thermal correction
// (1/4pi^2) int_0^inf (sum_j c_j e^{-s m_j^2}) (sa coth(sa) - 1)
//   sum_{n>=1} (-1)^n e^{-beta^2 n^2/4s} ds/s^3.
double ft_pv(double a, double beta, const PauliVillarsScheme& scheme,
             const QuadratureConfig& cfg, const SeriesPolicy& pol = {});

// No-field thermal density of a single mass: for m > 0 the Bessel closed form
// (2m^2/(pi^2 beta^2)) sum_{n>=1} (-1)^n n^{-2} K_2(m beta n); for m = 0
// exactly -7 pi^2 / (180 beta^4).
double ft_vacuum_single(double beta, double m, const QuadratureConfig& cfg = {},
                        const SeriesPolicy& pol = {});

// f0_pv + ft_pv at |a|; beta = kZeroTemperature sets ft = 0.
DensityPoint total_density(double a, double beta, const PauliVillarsScheme& scheme,
                           const QuadratureConfig& cfg, const SeriesPolicy& pol = {});

}  // namespace magvac
