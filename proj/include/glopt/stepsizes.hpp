#pragma once

#include "glopt/core.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace glopt {

inline double fixed_step(double l) {
  if (!(l > 0.0)) throw InputError("fixed_step: L must be > 0");
  return 1.0 / l;
}

// Polyak step (f(w) - f*) / ||grad||^2. Returns nullopt at a stationary
// point (zero gradient) so the caller can stop. f_w below f* beyond
// round-off slack means the supplied f* is wrong.
inline std::optional<double> polyak_step(double f_w, double f_star, double grad_sq) {
  if (!std::isfinite(f_w) || !std::isfinite(f_star) || !std::isfinite(grad_sq) || grad_sq < 0.0)
    throw InputError("polyak_step: non-finite input");
  double gap = f_w - f_star;
  if (gap < -1e-12 * (1.0 + std::abs(f_star)))
    throw InputError("polyak_step: f(w) < f_star, inconsistent optimum value");
  if (grad_sq == 0.0) return std::nullopt;
  gap = std::max(gap, 0.0);
  return gap / grad_sq;
}

// State threaded between AdGD updates. theta is eta_{t-1}/eta_{t-2};
// on the first update the growth term is inactive (theta treated as
// infinite), so the first real step equals the curvature estimate.
struct AdgdState {
  double eta_prev = 0.0;
  double theta_prev = std::numeric_limits<double>::infinity();
  Vec w_prev;
  Vec g_prev;
  bool first = true;

  static AdgdState initial(double eta0, Vec w0, Vec g0) {
    if (!(eta0 > 0.0)) throw InputError("AdgdState: eta0 must be > 0");
    AdgdState s;
    s.eta_prev = eta0;
    s.w_prev = std::move(w0);
    s.g_prev = std::move(g0);
    return s;
  }
};

// eta_t = min( sqrt(1 + theta/2) * eta_{t-1},
//              ||w_t - w_{t-1}|| / (2 ||g_t - g_{t-1}||) ),
// with the curvature term dropped when the gradients coincide.
inline std::pair<double, AdgdState> adgd_step(const AdgdState& state, const Vec& w_t,
                                              const Vec& g_t) {
  require_finite(w_t, "w_t");
  require_finite(g_t, "g_t");
  const double dg = (g_t - state.g_prev).norm();
  const double dw = (w_t - state.w_prev).norm();

  double eta;
  const double curvature =
      dg > 0.0 ? dw / (2.0 * dg) : std::numeric_limits<double>::infinity();
  if (state.first) {
    eta = std::isinf(curvature) ? state.eta_prev : curvature;
  } else {
    const double growth = std::sqrt(1.0 + 0.5 * state.theta_prev) * state.eta_prev;
    eta = std::min(growth, curvature);
  }

  AdgdState next;
  next.eta_prev = eta;
  next.theta_prev = eta / state.eta_prev;
  next.w_prev = w_t;
  next.g_prev = g_t;
  next.first = false;
  return {eta, next};
}

}  // namespace glopt
