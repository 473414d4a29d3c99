#pragma once

#include "glopt/core.hpp"
#include "glopt/problems.hpp"

#include <cmath>
#include <vector>

namespace glopt {

struct LOConfig {
  double initial_step = 1.0;  // first bracket probe
  double growth = 2.0;        // bracket expansion factor
  double dd_tol_rel = 1e-10;  // directional-derivative tolerance, relative to |<g, d>|
  double interval_tol = 1e-12;  // bisection interval tolerance, scaled by (1 + eta)
  int max_evals = 200;
  bool allow_closed_form = true;  // quadratic shortcut; disable to force the iterative path

  void validate() const {
    if (!(initial_step > 0.0)) throw InputError("LOConfig: initial_step must be > 0");
    if (!(growth > 1.0)) throw InputError("LOConfig: growth must be > 1");
    if (!(dd_tol_rel > 0.0) || !(interval_tol > 0.0))
      throw InputError("LOConfig: tolerances must be > 0");
    if (max_evals < 2) throw InputError("LOConfig: max_evals too small");
  }
};

enum class ArmijoMode { Backtrack, ForwardBacktrack, Reset };

struct ArmijoConfig {
  double alpha = 0.5;  // sufficient-decrease coefficient, in (0, 1/2]
  double beta = 0.5;   // shrink factor, in (0, 1)
  ArmijoMode mode = ArmijoMode::ForwardBacktrack;
  double eta_init = 1.0;   // initial (and reset) step
  bool warm_start = true;  // carry the last accepted step between iterations
  int max_trials = 100;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 0.5)) throw InputError("ArmijoConfig: alpha must be in (0, 1/2]");
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("ArmijoConfig: beta must be in (0, 1)");
    if (!(eta_init > 0.0)) throw InputError("ArmijoConfig: eta_init must be > 0");
    if (max_trials < 1) throw InputError("ArmijoConfig: max_trials must be >= 1");
  }
};

struct SearchOutcome {
  double eta = 0.0;
  int evaluations = 0;           // objective/gradient calls made by the search
  std::vector<double> trials;    // step sizes probed, in order
};

// Exact minimization of f along the ray w + eta*d, eta >= 0. Expands a
// bracket by `growth` until the directional derivative turns nonnegative or
// f increases, then bisects the directional derivative. Quadratics take the
// closed-form step -<g,d>/(d'Ad) instead; the two routes agree to 1e-8
// relative on PSD quadratics.
inline SearchOutcome line_optimize(const Objective& obj, const Vec& w, double f_w,
                                   const Vec& grad_w, const Vec& d, const LOConfig& cfg = {}) {
  cfg.validate();
  const double dd0 = grad_w.dot(d);
  if (!(dd0 < 0.0)) throw InputError("line_optimize: d is not a descent direction");

  if (cfg.allow_closed_form) {
    if (const auto* q = dynamic_cast<const QuadraticProblem*>(&obj)) {
      const double curv = d.dot(q->matrix() * d);
      if (curv <= 0.0) throw UnboundedDirection("line_optimize: nonpositive curvature along d");
      return SearchOutcome{-dd0 / curv, 1, {-dd0 / curv}};  // one curvature product
    }
  }

  SearchOutcome out;
  const double dd_tol = cfg.dd_tol_rel * std::abs(dd0);
  auto dderiv = [&](double eta) {
    ++out.evaluations;
    return obj.gradient(w + eta * d).dot(d);
  };
  auto fval = [&](double eta) {
    ++out.evaluations;
    return obj.value(w + eta * d);
  };

  double lo = 0.0;
  double hi = cfg.initial_step;
  double dd_hi;
  for (;;) {
    out.trials.push_back(hi);
    dd_hi = dderiv(hi);
    // A strictly positive slope or a value increase closes the bracket. An
    // exactly-zero slope with f still below f(w) is ambiguous between an
    // exact hit and gradient underflow on an unattained infimum, so keep
    // expanding; a real minimum turns the slope positive one step later.
    if (dd_hi > 0.0 || fval(hi) > f_w) break;
    if (out.evaluations >= cfg.max_evals)
      throw UnboundedDirection("line_optimize: bracket did not close within max_evals");
    lo = hi;
    hi *= cfg.growth;
  }

  if (std::abs(dd_hi) <= dd_tol) {
    out.eta = hi;
    return out;
  }

  double mid = 0.5 * (lo + hi);
  while (out.evaluations < cfg.max_evals) {
    mid = 0.5 * (lo + hi);
    if (hi - lo <= cfg.interval_tol * (1.0 + mid)) break;
    const double dd_mid = dderiv(mid);
    out.trials.push_back(mid);
    if (std::abs(dd_mid) <= dd_tol) break;
    if (dd_mid < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.eta = mid;
  return out;
}

inline SearchOutcome line_optimize(const Objective& obj, const Vec& w, const Vec& d,
                                   const LOConfig& cfg = {}) {
  return line_optimize(obj, w, obj.value(w), obj.gradient(w), d, cfg);
}

namespace detail {

// f(w - eta g) <= f(w) - alpha * eta * ||g||^2, ties passing.
inline bool armijo_holds(const Objective& obj, const Vec& w, const Vec& g, double f_w,
                         double gg, double alpha, double eta, int& evals) {
  ++evals;
  return obj.value(w - eta * g) <= f_w - alpha * eta * gg;
}

}  // namespace detail

// Armijo sufficient-decrease search along the negative gradient. Backtrack
// shrinks from eta_start by beta until the condition holds; forward-backtrack
// first grows by 1/beta while the condition keeps holding and returns the
// last passing step. Reset mode is plain backtracking whose caller restarts
// from eta_init every iteration.
inline SearchOutcome armijo_search(const Objective& obj, const Vec& w, const Vec& g, double f_w,
                                   const ArmijoConfig& cfg, double eta_start) {
  cfg.validate();
  if (!(eta_start > 0.0)) throw InputError("armijo_search: eta_start must be > 0");
  const double gg = g.squaredNorm();
  if (gg == 0.0) throw InputError("armijo_search: gradient is zero");

  SearchOutcome out;
  double eta = eta_start;
  out.trials.push_back(eta);
  bool ok = detail::armijo_holds(obj, w, g, f_w, gg, cfg.alpha, eta, out.evaluations);

  if (ok && cfg.mode == ArmijoMode::ForwardBacktrack) {
    while (static_cast<int>(out.trials.size()) < cfg.max_trials) {
      const double next = eta / cfg.beta;
      out.trials.push_back(next);
      if (!detail::armijo_holds(obj, w, g, f_w, gg, cfg.alpha, next, out.evaluations)) break;
      eta = next;
    }
    out.eta = eta;
    return out;
  }

  while (!ok) {
    if (static_cast<int>(out.trials.size()) >= cfg.max_trials)
      throw SearchFailure("armijo_search: no step accepted within max_trials");
    eta *= cfg.beta;
    out.trials.push_back(eta);
    ok = detail::armijo_holds(obj, w, g, f_w, gg, cfg.alpha, eta, out.evaluations);
  }
  out.eta = eta;
  return out;
}

// Stochastic Armijo rule on component i with alpha = beta = 1/2: restart at
// eta_max, halve until f_i(w - eta g_i) <= f_i(w) - (eta/2) ||g_i||^2.
inline SearchOutcome stochastic_armijo(const Objective& obj, Eigen::Index i, const Vec& w,
                                       double eta_max, int max_trials = 100) {
  if (!(eta_max > 0.0)) throw InputError("stochastic_armijo: eta_max must be > 0");
  const double fi = obj.component_value(i, w);
  const Vec gi = obj.component_gradient(i, w);
  const double gg = gi.squaredNorm();
  if (gg == 0.0) throw InputError("stochastic_armijo: component gradient is zero");

  SearchOutcome out;
  out.evaluations = 2;  // fi and gi above
  double eta = eta_max;
  for (int trial = 0; trial < max_trials; ++trial) {
    out.trials.push_back(eta);
    ++out.evaluations;
    if (obj.component_value(i, w - eta * gi) <= fi - 0.5 * eta * gg) {
      out.eta = eta;
      return out;
    }
    eta *= 0.5;
  }
  throw SearchFailure("stochastic_armijo: no step accepted within max_trials");
}

struct NagSearchResult {
  double eta = 0.0;
  Vec y;       // extrapolated point for the accepted step
  Vec grad_y;  // gradient at y
  double f_y = 0.0;
  int evaluations = 0;
};

// Two-step Armijo search for the accelerated method: each trial step eta
// implies q = eta*mu and its own extrapolation y, so y is recomputed per
// trial. Accepted steps never exceed 1/mu on strongly convex objectives.
inline NagSearchResult nag_two_step_search(const Objective& obj, const Vec& w_t, const Vec& z_t,
                                           double mu, double eta_max, int max_trials = 100) {
  if (!(mu > 0.0)) throw InputError("nag_two_step_search: mu must be > 0");
  if (!(eta_max > 0.0)) throw InputError("nag_two_step_search: eta_max must be > 0");

  NagSearchResult res;
  double eta = eta_max;
  for (int trial = 0; trial < max_trials; ++trial) {
    const double sq = std::sqrt(eta * mu);
    const Vec y = w_t + (sq / (1.0 + sq)) * (z_t - w_t);
    const Vec gy = obj.gradient(y);
    const double fy = obj.value(y);
    res.evaluations += 2;
    const double gg = gy.squaredNorm();
    ++res.evaluations;
    if (obj.value(y - eta * gy) <= fy - 0.5 * eta * gg) {
      res.eta = eta;
      res.y = y;
      res.grad_y = gy;
      res.f_y = fy;
      return res;
    }
    eta *= 0.5;
  }
  throw SearchFailure("nag_two_step_search: no step accepted within max_trials");
}

}  // namespace glopt
