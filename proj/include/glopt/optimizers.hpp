#pragma once

#include "glopt/core.hpp"
#include "glopt/linesearch.hpp"
#include "glopt/problems.hpp"
#include "glopt/rng.hpp"
#include "glopt/stepsizes.hpp"
#include "glopt/trace.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <variant>

namespace glopt {

using IterateObserver = std::function<void(int, const Vec&)>;
using NagObserver = std::function<void(int, const Vec& w, const Vec& z)>;

// Step-size rules for plain gradient descent.
struct FixedRule {
  double l;
};
struct LORule {
  LOConfig cfg{};
};
struct ArmijoRule {
  ArmijoConfig cfg{};
};
struct PolyakRule {
  std::optional<double> f_star;  // falls back to the objective's known optimum
};
struct AdgdRule {
  double eta0 = 1e-10;  // tiny bootstrap step before the rule has two iterates
};
using GdRule = std::variant<FixedRule, LORule, ArmijoRule, PolyakRule, AdgdRule>;

struct CdUniform {
  std::uint64_t seed = 0;
};
struct CdGreedy {};
using CdSelection = std::variant<CdUniform, CdGreedy>;

struct NagState {
  Vec w, z, y;
  double eta = 0.0;
  double q = 0.0;  // eta * mu, in (0, 1] for accepted steps
};

struct NlcgState {
  Vec direction;
  Vec grad_prev;
  int since_reset = 0;
  int reset_period = 0;
};

namespace detail {

class TraceBuilder {
 public:
  TraceBuilder(const Objective& obj, const CountedObjective& counted, const StopRule& stop)
      : stop_(stop), counted_(counted) {
    stop_.validate();
    f_star_ = obj.optimum_value();
    w_star_ = obj.minimizer();
    if (stop_.gap_target && !f_star_)
      throw InputError("gap target requires a known optimum value; use a gradient or "
                       "iteration criterion instead");
    if (stop_.dist_sq_target && !w_star_)
      throw InputError("distance target requires a known minimizer");
  }

  // Records the row for iterate t and reports whether to stop.
  bool record_and_check(Trace& tr, int t, const Vec& w, double f, double grad_norm,
                        std::optional<double> step) {
    TraceRecord rec;
    rec.iter = t;
    rec.f = f;
    rec.grad_norm = grad_norm;
    rec.step = step;
    if (f_star_) rec.gap = f - *f_star_;
    if (w_star_) rec.dist_sq = (w - *w_star_).squaredNorm();
    rec.feval = counted_.feval();
    rec.geval = counted_.geval();
    tr.records.push_back(rec);

    if (stop_.gap_target && rec.gap && *rec.gap <= *stop_.gap_target) {
      tr.reason = StopReason::GapTarget;
      return true;
    }
    if (stop_.dist_sq_target && rec.dist_sq && *rec.dist_sq <= *stop_.dist_sq_target) {
      tr.reason = StopReason::DistTarget;
      return true;
    }
    if (stop_.grad_target && grad_norm <= *stop_.grad_target) {
      tr.reason = StopReason::GradTarget;
      return true;
    }
    if (t >= stop_.max_iters) {
      tr.reason = StopReason::MaxIters;
      return true;
    }
    return false;
  }

 private:
  StopRule stop_;
  const CountedObjective& counted_;
  std::optional<double> f_star_;
  std::optional<Vec> w_star_;
};

}  // namespace detail

// Gradient descent w <- w - eta * grad f(w) under the chosen step rule.
inline Trace run_gd(const Objective& obj, const GdRule& rule, const Vec& w0,
                    const StopRule& stop, const IterateObserver& observer = {}) {
  CountedObjective counted(obj);
  detail::TraceBuilder builder(obj, counted, stop);

  std::optional<double> polyak_fstar;
  if (const auto* p = std::get_if<PolyakRule>(&rule)) {
    polyak_fstar = p->f_star ? p->f_star : obj.optimum_value();
    if (!polyak_fstar)
      throw InputError("Polyak rule requires f_star (problem reports no optimum value)");
  }

  Trace tr;
  Vec w = w0;
  std::optional<double> last_step;
  std::optional<AdgdState> adgd;
  std::optional<double> armijo_warm;

  for (int t = 0;; ++t) {
    const Vec g = counted.gradient(w);
    const double f = counted.value(w);
    const double gn = g.norm();
    if (observer) observer(t, w);
    if (builder.record_and_check(tr, t, w, f, gn, last_step)) break;
    if (gn == 0.0) {
      tr.reason = StopReason::GradTarget;  // stationary point, nothing left to do
      break;
    }

    double eta = 0.0;
    try {
      if (const auto* fx = std::get_if<FixedRule>(&rule)) {
        eta = fixed_step(fx->l);
      } else if (const auto* lo = std::get_if<LORule>(&rule)) {
        eta = line_optimize(counted, w, f, g, -g, lo->cfg).eta;
      } else if (const auto* ar = std::get_if<ArmijoRule>(&rule)) {
        const auto& cfg = ar->cfg;
        double start = cfg.eta_init;
        if (cfg.mode != ArmijoMode::Reset && cfg.warm_start && armijo_warm) start = *armijo_warm;
        eta = armijo_search(counted, w, g, f, cfg, start).eta;
        armijo_warm = eta;
      } else if (std::get_if<PolyakRule>(&rule)) {
        const auto step = polyak_step(f, *polyak_fstar, g.squaredNorm());
        if (!step) {
          tr.reason = StopReason::GradTarget;
          break;
        }
        eta = *step;
      } else if (const auto* ad = std::get_if<AdgdRule>(&rule)) {
        if (!adgd) {
          eta = ad->eta0;
          adgd = AdgdState::initial(ad->eta0, w, g);
        } else {
          auto [e, next] = adgd_step(*adgd, w, g);
          eta = e;
          adgd = next;
        }
      }
    } catch (const SearchFailure&) {
      tr.reason = StopReason::SearchFailure;
      break;
    } catch (const UnboundedDirection&) {
      tr.reason = StopReason::UnboundedDirection;
      break;
    }

    if (eta > 0.0) {
      w -= eta * g;
      last_step = eta;
    } else {
      last_step = std::nullopt;  // degenerate zero step (e.g. Polyak at f = f*)
      if (std::get_if<PolyakRule>(&rule)) {
        tr.reason = StopReason::GapTarget;
        break;
      }
    }
  }
  tr.final_w = w;
  return tr;
}

// Coordinate descent with exact 1-D line optimization along the chosen
// coordinate. Greedy selection takes the largest |partial| with the lowest
// index breaking ties; uniform selection draws from a seeded stream.
inline Trace run_cd(const Objective& obj, const CdSelection& selection, const Vec& w0,
                    const StopRule& stop, const LOConfig& lo_cfg = {},
                    const IterateObserver& observer = {}) {
  CountedObjective counted(obj);
  detail::TraceBuilder builder(obj, counted, stop);
  const Eigen::Index d = obj.dim();

  std::optional<SplitMix64> rng;
  if (const auto* u = std::get_if<CdUniform>(&selection)) rng.emplace(u->seed);

  Trace tr;
  Vec w = w0;
  std::optional<double> last_step;

  for (int t = 0;; ++t) {
    const Vec g = counted.gradient(w);
    const double f = counted.value(w);
    const double gn = g.norm();
    if (observer) observer(t, w);
    if (builder.record_and_check(tr, t, w, f, gn, last_step)) break;
    if (gn == 0.0) {
      tr.reason = StopReason::GradTarget;
      break;
    }

    Eigen::Index j;
    if (rng) {
      j = static_cast<Eigen::Index>(rng->below(static_cast<std::uint64_t>(d)));
    } else {
      j = 0;
      for (Eigen::Index k = 1; k < d; ++k)
        if (std::abs(g[k]) > std::abs(g[j])) j = k;
    }

    const double gj = g[j];
    if (gj == 0.0) {
      last_step = std::nullopt;  // sampled a flat coordinate; no step this iteration
      continue;
    }

    Vec dir = Vec::Zero(d);
    dir[j] = -gj;
    double eta;
    try {
      eta = line_optimize(counted, w, f, g, dir, lo_cfg).eta;
    } catch (const UnboundedDirection&) {
      tr.reason = StopReason::UnboundedDirection;
      break;
    }
    w[j] -= eta * gj;
    last_step = eta;
  }
  tr.final_w = w;
  return tr;
}

// SGD with the stochastic Armijo rule restarted at eta_max every iteration.
inline Trace run_sgd(const Objective& obj, double eta_max, std::uint64_t seed, const Vec& w0,
                     const StopRule& stop, const IterateObserver& observer = {}) {
  if (!obj.finite_sum()) throw UnsupportedCapability("run_sgd requires a finite-sum objective");
  CountedObjective counted(obj);
  detail::TraceBuilder builder(obj, counted, stop);
  SplitMix64 rng(seed);
  const auto n = static_cast<std::uint64_t>(obj.components());

  Trace tr;
  Vec w = w0;
  std::optional<double> last_step;

  for (int t = 0;; ++t) {
    const Vec g = counted.gradient(w);
    const double f = counted.value(w);
    if (observer) observer(t, w);
    if (builder.record_and_check(tr, t, w, f, g.norm(), last_step)) break;
    if (g.norm() == 0.0) {
      tr.reason = StopReason::GradTarget;
      break;
    }

    const auto i = static_cast<Eigen::Index>(rng.below(n));
    const Vec gi = counted.component_gradient(i, w);
    if (gi.squaredNorm() == 0.0) {
      last_step = std::nullopt;  // component already stationary
      continue;
    }
    double eta;
    try {
      eta = stochastic_armijo(counted, i, w, eta_max).eta;
    } catch (const SearchFailure&) {
      tr.reason = StopReason::SearchFailure;
      break;
    }
    w -= eta * gi;
    last_step = eta;
  }
  tr.final_w = w;
  return tr;
}

// Three-sequence accelerated gradient method with the two-step Armijo
// search; z_0 = w_0 and accepted steps satisfy eta <= 1/mu.
inline Trace run_nag(const Objective& obj, double mu, double eta_max, const Vec& w0,
                     const StopRule& stop, const NagObserver& observer = {}) {
  if (!(mu > 0.0)) throw InputError("run_nag: mu must be > 0");
  CountedObjective counted(obj);
  detail::TraceBuilder builder(obj, counted, stop);

  Trace tr;
  NagState st;
  st.w = w0;
  st.z = w0;
  std::optional<double> last_step;

  for (int t = 0;; ++t) {
    const Vec g = counted.gradient(st.w);
    const double f = counted.value(st.w);
    if (observer) observer(t, st.w, st.z);
    if (builder.record_and_check(tr, t, st.w, f, g.norm(), last_step)) break;
    if (g.norm() == 0.0) {
      tr.reason = StopReason::GradTarget;
      break;
    }

    NagSearchResult res;
    try {
      res = nag_two_step_search(counted, st.w, st.z, mu, eta_max);
    } catch (const SearchFailure&) {
      tr.reason = StopReason::SearchFailure;
      break;
    }
    st.eta = res.eta;
    st.q = res.eta * mu;
    st.y = res.y;
    const double sq = std::sqrt(st.q);
    st.w = res.y - res.eta * res.grad_y;
    st.z = (1.0 - sq) * st.z + sq * (res.y - (1.0 / mu) * res.grad_y);
    last_step = res.eta;
  }
  tr.final_w = st.w;
  return tr;
}

// Momentum (two-sequence) form of the accelerated method, replaying the
// exact step sizes chosen by run_nag's searches. Algebraically the two
// formulations generate the same iterates.
inline Trace nag_momentum_form(const Objective& obj, double mu, double eta_max, const Vec& w0,
                               const StopRule& stop, const IterateObserver& observer = {}) {
  const Trace base = run_nag(obj, mu, eta_max, w0, stop);
  const int steps = base.iterations();

  CountedObjective counted(obj);
  detail::TraceBuilder builder(obj, counted, stop);

  Trace tr;
  Vec w = w0;
  Vec w_prev = w0;  // w_{-1} = w_0
  std::optional<double> last_step;
  double eta_prev = 0.0;

  for (int t = 0; t <= steps; ++t) {
    const Vec g = counted.gradient(w);
    const double f = counted.value(w);
    if (observer) observer(t, w);
    builder.record_and_check(tr, t, w, f, g.norm(), last_step);
    if (t == steps) break;

    const double eta = base.records[static_cast<std::size_t>(t) + 1].step.value();
    const double q = eta * mu;
    double coef = 0.0;
    if (t > 0) {
      const double q_prev = eta_prev * mu;
      coef = (1.0 - std::sqrt(q_prev)) / (1.0 + std::sqrt(q)) * std::sqrt(eta / eta_prev);
    }
    const Vec y = w + coef * (w - w_prev);
    const Vec gy = counted.gradient(y);
    w_prev = w;
    w = y - eta * gy;
    eta_prev = eta;
    last_step = eta;
  }
  tr.reason = base.reason;
  tr.final_w = w;
  return tr;
}

// Nonlinear conjugate gradient with the Polak-Ribiere momentum coefficient,
// exact line optimization along the composite direction, and resets (beta=0)
// on the first and every reset_period-th iteration. The momentum term
// applies beta to the previous search direction, which on quadratics makes
// the reset cycles coincide with linear conjugate gradient. A non-descent
// composite direction falls back to steepest descent and restarts the cycle.
inline Trace run_nlcg(const Objective& obj, int reset_period, const Vec& w0, const StopRule& stop,
                      const LOConfig& lo_cfg = {}, const IterateObserver& observer = {}) {
  CountedObjective counted(obj);
  detail::TraceBuilder builder(obj, counted, stop);
  NlcgState st;
  st.reset_period = reset_period > 0 ? reset_period : static_cast<int>(obj.dim());

  Trace tr;
  Vec w = w0;
  std::optional<double> last_step;

  for (int t = 0;; ++t) {
    const Vec g = counted.gradient(w);
    const double f = counted.value(w);
    if (observer) observer(t, w);
    if (builder.record_and_check(tr, t, w, f, g.norm(), last_step)) break;
    if (g.norm() == 0.0) {
      tr.reason = StopReason::GradTarget;
      break;
    }

    bool reset = t == 0 || st.since_reset >= st.reset_period;
    Vec dir = -g;
    if (!reset) {
      const double beta = g.dot(g - st.grad_prev) / st.grad_prev.squaredNorm();
      dir += beta * st.direction;
      if (g.dot(dir) >= 0.0) {  // momentum spoiled descent; restart from steepest descent
        dir = -g;
        reset = true;
      }
    }
    st.since_reset = reset ? 1 : st.since_reset + 1;

    double eta;
    try {
      eta = line_optimize(counted, w, f, g, dir, lo_cfg).eta;
    } catch (const UnboundedDirection&) {
      tr.reason = StopReason::UnboundedDirection;
      break;
    }
    w += eta * dir;
    st.direction = std::move(dir);
    st.grad_prev = g;
    last_step = eta;
  }
  tr.final_w = w;
  return tr;
}

}  // namespace glopt
