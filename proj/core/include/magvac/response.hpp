#pragma once

#include <functional>

#include "magvac/pv_scheme.hpp"
#include "magvac/quadrature.hpp"
#include "magvac/special_functions.hpp"

namespace magvac {

// One row of a dielectric-response sweep.
struct ResponsePoint {
  double q = 0.0;
  double m0_value = 0.0;
  double mt_value = 0.0;
  double total = 0.0;  // m0_value + mt_value
  double err = 0.0;
  bool converged = true;
};

// Radially symmetric magnetic spectral density |Bhat(q)|^2 with compact
// support [0, q_max].
struct RadialSpectrum {
  std::function<double(double)> profile;
  double q_max = 0.0;
};

// Zero-temperature response
// M0(q) = -(2/pi) int_0^1 sum_j c_j log(m_j^2 + u(1-u)q^2) u(1-u) du,
// in (0, M0(0)] with M0(0) = 2 log(lambda) / (3 pi).
double m0_response(double q, const PauliVillarsScheme& scheme, const QuadratureConfig& cfg);

// Thermal correction
// MT(q,beta) = -(8/pi) int_0^1 int_0^inf sum_j c_j n_F(X_j cosh t) dt u(1-u) du
// with n_F(y) = 1/(e^y + 1) and X_j = beta sqrt(m_j^2 + u(1-u)q^2).
double mt_response(double q, double beta, const PauliVillarsScheme& scheme,
                   const QuadratureConfig& cfg);

// Conservative bound K / sqrt(beta) with K = sum_j |c_j| * 32/(3 sqrt(pi m_j));
// |mt_response| stays below it on sampled grids with ample slack.
double mt_bound(const PauliVillarsScheme& scheme, double beta);

// M0, MT and their sum at one q; beta = +infinity yields mt_value = 0.
ResponsePoint response_point(double q, double beta, const PauliVillarsScheme& scheme,
                             const QuadratureConfig& cfg);

// G(q,beta) = -(q^2/(beta pi^{3/2})) int_0^1 int_0^inf sum_j c_j theta2'(s)
//   s^{1/2} e^{-s(m_j^2+u(1-u)q^2)} ds u(1-u) du  >= 0.
double g_total(double q, double beta, const PauliVillarsScheme& scheme,
               const QuadratureConfig& cfg, const SeriesPolicy& pol = {});

// Thermal part GT as the alternating Bessel series
// (q^2/pi^2) sum_{n>=1} (-1)^n int_0^1 sum_j c_j [K0(beta n rho_j)
//   - beta n rho_j K1(beta n rho_j)] u(1-u) du,  rho_j^2 = m_j^2 + u(1-u)q^2.
double gt_bessel(double q, double beta, const PauliVillarsScheme& scheme,
                 const QuadratureConfig& cfg, const SeriesPolicy& pol = {});

// The same GT as a (t,u) double integral of
// g(y) = e^{-y}(y - 1 - e^{-y})/(1+e^{-y})^2 at y = X_j cosh t.
double gt_coshint(double q, double beta, const PauliVillarsScheme& scheme,
                  const QuadratureConfig& cfg);

// Renormalized vacuum-polarization kernel
// U(q) = (q^2/4pi) int_0^1 (z^2 - z^4/3)/(1 + q^2(1-z^2)/4) dz.
double uehling(double q, const QuadratureConfig& cfg);

// Quadratic form (1/8pi) int (M0+MT)(q) |Bhat(q)|^2 d^3q reduced radially to
// (1/2) int_0^{q_max} (M0+MT)(q) profile(q) q^2 dq; nonnegative.
double fpv2(const RadialSpectrum& spectrum, double beta, const PauliVillarsScheme& scheme,
            const QuadratureConfig& cfg);

}  // namespace magvac
