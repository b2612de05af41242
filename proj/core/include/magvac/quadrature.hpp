#pragma once

#include <functional>

namespace magvac {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 50;
  // Only the 15-point Gauss-Kronrod pair is provided.
  int points_per_panel = 15;
  // Hard cap on global refinement; reaching it yields converged=false.
  int max_panels = 20000;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels_used = 0;
  bool converged = false;
};

// Map used by integrate_semiinf. `exponential` assumes the integrand decays
// at least exponentially: it must underflow to 0 before the substitution
// overflows (arguments up to e^700 are produced).
enum class TailKind { algebraic, exponential };

// Globally adaptive Gauss-Kronrod bisection on [a, b]. Non-convergence is
// reported through the result, never thrown.
IntegralResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                const QuadratureConfig& cfg);

// Integral over (from, infinity). `algebraic` uses s = t/(1-t); `exponential`
// splits at from+1 and maps the tail through s = e^u for integrands spanning
// many decades.
IntegralResult integrate_semiinf(const std::function<double(double)>& f,
                                 const QuadratureConfig& cfg,
                                 TailKind tail = TailKind::algebraic, double from = 0.0);

}  // namespace magvac
