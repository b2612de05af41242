#include "magvac/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "magvac/errors.hpp"

namespace magvac {

namespace {

// 15-point Kronrod extension of 7-point Gauss; nodes on [-1,1], center last.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss-7 weights; the Gauss nodes are the odd-index Kronrod nodes plus the
// center.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
};

bool panel_less(const Panel& x, const Panel& y) { return x.error < y.error; }

Panel eval_panel(const std::function<double(double)>& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  if (!std::isfinite(fc)) throw NonFiniteEvaluation("integrand returned a non-finite value");

  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double offset = half * kKronrodNodes[i];
    const double flo = f(center - offset);
    const double fhi = f(center + offset);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
      throw NonFiniteEvaluation("integrand returned a non-finite value");
    const double pair = flo + fhi;
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }

  Panel p;
  p.a = a;
  p.b = b;
  p.depth = depth;
  p.value = kronrod * half;
  p.error = std::abs((kronrod - gauss) * half);
  return p;
}

}  // namespace

IntegralResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                const QuadratureConfig& cfg) {
  if (!(a < b)) throw DomainError("integrate_finite requires a < b");
  if (cfg.points_per_panel != 15)
    throw DomainError("only the 15-point Gauss-Kronrod panel rule is provided");
  if (!(cfg.rel_tol > 0.0) || cfg.abs_tol < 0.0 || cfg.max_depth < 1)
    throw DomainError("invalid quadrature configuration");

  std::vector<Panel> heap;
  heap.push_back(eval_panel(f, a, b, 0));
  double total = heap.front().value;
  double error = heap.front().error;

  bool converged = false;
  while (true) {
    if (error <= std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol)) {
      converged = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= cfg.max_panels) break;

    std::pop_heap(heap.begin(), heap.end(), panel_less);
    const Panel worst = heap.back();
    if (worst.depth >= cfg.max_depth) {
      // The dominant panel cannot be split further; no progress is possible.
      std::push_heap(heap.begin(), heap.end(), panel_less);
      break;
    }
    heap.pop_back();
    total -= worst.value;
    error = std::max(error - worst.error, 0.0);

    const double mid = 0.5 * (worst.a + worst.b);
    for (const Panel& half : {eval_panel(f, worst.a, mid, worst.depth + 1),
                              eval_panel(f, mid, worst.b, worst.depth + 1)}) {
      total += half.value;
      error += half.error;
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end(), panel_less);
    }
  }

  IntegralResult result;
  for (const Panel& p : heap) {
    result.value += p.value;
    result.error_estimate += p.error;
  }
  result.panels_used = static_cast<int>(heap.size());
  result.converged = converged;
  return result;
}

IntegralResult integrate_semiinf(const std::function<double(double)>& f,
                                 const QuadratureConfig& cfg, TailKind tail, double from) {
  if (from < 0.0) throw DomainError("integrate_semiinf requires from >= 0");

  if (tail == TailKind::algebraic) {
    // s = from + t/(1-t), ds = dt/(1-t)^2.
    auto mapped = [&f, from](double t) {
      const double w = 1.0 - t;
      return f(from + t / w) / (w * w);
    };
    return integrate_finite(mapped, 0.0, 1.0, cfg);
  }

  // Exponentially decaying integrands: the head [from, from+1] directly, the
  // tail through s = from + e^u with u = t/(1-t). Beyond u = 700 the
  // contribution is required (by the TailKind contract) to underflow.
  IntegralResult head = integrate_finite(f, from, from + 1.0, cfg);
  auto tail_mapped = [&f, from](double t) {
    const double w = 1.0 - t;
    const double u = t / w;
    if (u > 700.0) return 0.0;
    const double eu = std::exp(u);
    return f(from + eu) * eu / (w * w);
  };
  IntegralResult rest = integrate_finite(tail_mapped, 0.0, 1.0, cfg);

  IntegralResult result;
  result.value = head.value + rest.value;
  result.error_estimate = head.error_estimate + rest.error_estimate;
  result.panels_used = head.panels_used + rest.panels_used;
  result.converged = head.converged && rest.converged;
  return result;
}

}  // namespace magvac
