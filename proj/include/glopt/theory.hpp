#pragma once

#include "glopt/core.hpp"
#include "glopt/linalg.hpp"
#include "glopt/problems.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace glopt {

enum class GlocalFlavor { FunctionValues, Iterates, CoordinateWise };

// Global constant L paired with a local constant valid on a threshold
// region: the delta-sublevel set {f - f* <= delta} (function-values flavor),
// the ball ||w - w*||^2 <= delta (iterates), or the coordinate-wise variant.
struct GlocalProfile {
  double l = 0.0;
  std::function<double(double)> lstar_fn;  // delta -> L*(delta), capped at L
  double delta = 0.0;
  GlocalFlavor flavor = GlocalFlavor::FunctionValues;

  double lstar() const { return lstar_fn(delta); }
  double lstar_at(double d) const { return lstar_fn(d); }

  static GlocalProfile constant(double l, double lstar, double delta,
                                GlocalFlavor flavor = GlocalFlavor::FunctionValues) {
    if (!(lstar > 0.0 && lstar <= l)) throw InputError("GlocalProfile: need 0 < L* <= L");
    return {l, [lstar](double) { return lstar; }, delta, flavor};
  }
};

// Logistic regression is (L, (ell* + delta) ||X||^2, delta)-glocally smooth
// for every delta, with L = ||X||^2 / 4; the local constant is capped at L.
inline GlocalProfile logistic_glocal(const Mat& x, double ell_star, double delta) {
  if (!(ell_star >= 0.0)) throw InputError("logistic_glocal: ell_star must be >= 0");
  if (!(delta > 0.0)) throw InputError("logistic_glocal: delta must be > 0");
  const double xnorm_sq = spectral_norm_sq(x);
  const double l = 0.25 * xnorm_sq;
  auto lstar = [ell_star, xnorm_sq, l](double d) {
    return std::min((ell_star + d) * xnorm_sq, l);
  };
  return {l, std::move(lstar), delta, GlocalFlavor::FunctionValues};
}

// Principal branch of the Lambert W function on [0, inf): the w >= 0 with
// w e^w = y. Log-based initial guess plus Halley refinement.
inline double lambert_w0(double y) {
  if (!(y >= 0.0)) throw InputError("lambert_w0: argument must be >= 0");
  if (y == 0.0) return 0.0;

  double w;
  if (y < std::exp(1.0)) {
    w = y / (1.0 + y);  // rough, monotone start below the fixed point
  } else {
    const double ly = std::log(y);
    w = ly - std::log(ly);
  }

  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double r = w * ew - y;
    if (std::abs(r) <= 1e-13 * y) break;
    const double denom = ew * (w + 1.0) - (w + 2.0) * r / (2.0 * w + 2.0);
    const double step = r / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

// Bound-minimizing sublevel threshold for logistic regression:
// minimizes h(delta) = (1/4) ln(delta0/delta) + (ell* + delta) ln(delta/eps)
// over [eps, delta0], keyed by xi = 1/4 - ell*.
struct OptimalDelta {
  double delta_star = 0.0;
  int case_tag = 0;      // 1: eps boundary, 2: delta0 boundary, 3: interior
  double omega = 0.0;    // W(xi e / eps), case 3 only
};

inline double logistic_bound_h(double delta, double delta0, double eps, double ell_star) {
  return 0.25 * std::log(delta0 / delta) + (ell_star + delta) * std::log(delta / eps);
}

inline OptimalDelta optimal_delta_logistic(double delta0, double eps, double ell_star) {
  if (!(delta0 > eps && eps > 0.0)) throw InputError("optimal_delta_logistic: need delta0 > eps > 0");
  if (!(ell_star >= 0.0)) throw InputError("optimal_delta_logistic: ell_star must be >= 0");

  const double xi = 0.25 - ell_star;
  if (xi <= eps) return {eps, 1, 0.0};
  if (xi >= delta0 * std::log(delta0 * std::exp(1.0) / eps)) return {delta0, 2, 0.0};

  const double omega = lambert_w0(xi * std::exp(1.0) / eps);
  const double d1 = xi / omega;
  const double d2 = (eps / std::exp(1.0)) * std::exp(omega);
  if (std::abs(d1 - d2) > 1e-10 * std::abs(d1))
    throw SearchFailure("optimal_delta_logistic: the two closed forms disagree");
  return {d1, 3, omega};
}

// Evaluated iteration-complexity bound. Phase logs are clamped at zero and
// each phase is rounded up separately. Order-only results carry the
// constants visible in their proofs and are flagged.
struct ComplexityBound {
  std::string tag;
  long long t = 0;
  std::vector<long long> phases;
  std::vector<std::pair<std::string, double>> inputs;
  bool explicit_constants = true;
};

struct BoundInputs {
  std::optional<double> l, lstar, mu, mu1, mu_star;
  std::optional<double> delta0, delta, eps;
  std::optional<double> dist0_sq;       // ||w_0 - w*||^2
  std::optional<double> d;              // problem dimension
  std::optional<double> zeta;           // failure probability, defaults to 0.1
  std::optional<double> alpha, beta;    // Armijo parameters
  std::optional<double> lmax, lmax_star;
  std::optional<double> phi3;           // AdGD potential at t = 3
  std::optional<double> r2_rho0;        // R^2(f(w_0))
  std::optional<double> r2_delta;       // R^2(delta + f*)
};

namespace detail {

inline double need(const std::optional<double>& v, const char* name) {
  if (!v) throw InputError(std::string("complexity_bound: missing input ") + name);
  if (!std::isfinite(*v)) throw InputError(std::string("complexity_bound: non-finite input ") + name);
  return *v;
}

inline double need_pos(const std::optional<double>& v, const char* name) {
  const double x = need(v, name);
  if (!(x > 0.0)) throw InputError(std::string("complexity_bound: input must be > 0: ") + name);
  return x;
}

// ln clamped at zero: phases contribute no negative iterations.
inline double lg(double x) { return x > 1.0 ? std::log(x) : 0.0; }

inline long long up(double x) {
  if (x <= 0.0) return 0;
  return static_cast<long long>(std::ceil(x));
}

}  // namespace detail

inline ComplexityBound complexity_bound(const std::string& tag, const BoundInputs& in) {
  using detail::lg;
  using detail::need;
  using detail::need_pos;
  using detail::up;

  ComplexityBound out;
  out.tag = tag;
  auto echo = [&](const char* name, double v) { out.inputs.emplace_back(name, v); };

  auto two_phase = [&](long long t1, long long t2) {
    out.phases = {t1, t2};
    out.t = t1 + t2;
  };

  auto check_split = [&](double delta0, double delta, double eps) {
    if (!(delta0 > delta && delta > eps && eps > 0.0))
      throw InputError("complexity_bound: need delta0 > delta > eps > 0");
  };

  if (tag == "glocal-gd-lo") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double d0 = need_pos(in.delta0, "delta0"), dl = need_pos(in.delta, "delta"),
                 ep = need_pos(in.eps, "eps");
    check_split(d0, dl, ep);
    echo("L", l); echo("Lstar", ls); echo("mu", mu);
    echo("delta0", d0); echo("delta", dl); echo("eps", ep);
    two_phase(up(l / mu * lg(d0 / dl)), up(ls / mu * lg(dl / ep)));
  } else if (tag == "armijo") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double a = need_pos(in.alpha, "alpha"), b = need_pos(in.beta, "beta");
    const double d0 = need_pos(in.delta0, "delta0"), dl = need_pos(in.delta, "delta"),
                 ep = need_pos(in.eps, "eps");
    check_split(d0, dl, ep);
    echo("L", l); echo("Lstar", ls); echo("mu", mu); echo("alpha", a); echo("beta", b);
    echo("delta0", d0); echo("delta", dl); echo("eps", ep);
    const double c = 2.0 * b * a * mu;
    two_phase(up(l / c * lg(d0 / dl)), up(ls / c * lg(dl / ep)));
  } else if (tag == "polyak-values") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double r0 = need_pos(in.dist0_sq, "dist0_sq");
    const double dl = need_pos(in.delta, "delta"), ep = need_pos(in.eps, "eps");
    if (!(dl > ep)) throw InputError("complexity_bound: need delta > eps");
    echo("L", l); echo("Lstar", ls); echo("mu", mu); echo("dist0_sq", r0);
    echo("delta", dl); echo("eps", ep);
    two_phase(up(4.0 * l / mu * lg(l * r0 / (2.0 * dl))),
              up(4.0 * ls / mu * lg(ls / l * dl / ep)));
  } else if (tag == "polyak-iterates") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double r0 = need_pos(in.dist0_sq, "dist0_sq");
    const double dl = need_pos(in.delta, "delta"), ep = need_pos(in.eps, "eps");
    check_split(r0, dl, ep);
    echo("L", l); echo("Lstar", ls); echo("mu", mu); echo("dist0_sq", r0);
    echo("delta", dl); echo("eps", ep);
    two_phase(up(4.0 * l / mu * lg(r0 / dl)), up(4.0 * ls / mu * lg(dl / ep)));
  } else if (tag == "adgd") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double p3 = need_pos(in.phi3, "phi3");
    const double dl = need_pos(in.delta, "delta"), ep = need_pos(in.eps, "eps");
    if (!(dl > ep)) throw InputError("complexity_bound: need delta > eps");
    echo("L", l); echo("Lstar", ls); echo("mu", mu); echo("phi3", p3);
    echo("delta", dl); echo("eps", ep);
    two_phase(up(4.0 * l / mu * lg(p3 / dl)), up(4.0 * ls / mu * lg(dl / ep)));
    out.explicit_constants = false;
  } else if (tag == "glocal-sc") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double ms = need_pos(in.mu_star, "mu_star");
    const double d0 = need_pos(in.delta0, "delta0"), dl = need_pos(in.delta, "delta"),
                 ep = need_pos(in.eps, "eps");
    check_split(d0, dl, ep);
    echo("L", l); echo("Lstar", ls); echo("mu", mu); echo("mu_star", ms);
    echo("delta0", d0); echo("delta", dl); echo("eps", ep);
    two_phase(up(l / mu * lg(d0 / dl)), up(ls / ms * lg(dl / ep)));
  } else if (tag == "convex-local-pl") {
    const double l = need_pos(in.l, "L"), ls = need_pos(in.lstar, "Lstar");
    const double ms = need_pos(in.mu_star, "mu_star");
    const double r2 = need_pos(in.r2_rho0, "r2_rho0");
    const double dl = need_pos(in.delta, "delta"), ep = need_pos(in.eps, "eps");
    if (!(dl > ep)) throw InputError("complexity_bound: need delta > eps");
    echo("L", l); echo("Lstar", ls); echo("mu_star", ms); echo("r2_rho0", r2);
    echo("delta", dl); echo("eps", ep);
    two_phase(up(2.0 * l * r2 / dl), up(ls / ms * lg(dl / ep)));
    out.explicit_constants = false;
  } else if (tag == "convex-convex") {
    const double l = need_pos(in.l, "L"), ls = need_pos(in.lstar, "Lstar");
    const double r2a = need_pos(in.r2_rho0, "r2_rho0");
    const double r2b = need_pos(in.r2_delta, "r2_delta");
    const double dl = need_pos(in.delta, "delta"), ep = need_pos(in.eps, "eps");
    if (!(dl > ep)) throw InputError("complexity_bound: need delta > eps");
    echo("L", l); echo("Lstar", ls); echo("r2_rho0", r2a); echo("r2_delta", r2b);
    echo("delta", dl); echo("eps", ep);
    two_phase(up(2.0 * l * r2a / dl), up(2.0 * ls * r2b / ep));
    out.explicit_constants = false;
  } else if (tag == "cd-random") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double dim = need_pos(in.d, "d");
    const double zeta = in.zeta ? need_pos(in.zeta, "zeta") : 0.1;
    const double d0 = need_pos(in.delta0, "delta0"), dl = need_pos(in.delta, "delta"),
                 ep = need_pos(in.eps, "eps");
    check_split(d0, dl, ep);
    echo("d", dim); echo("L", l); echo("Lstar", ls); echo("mu", mu); echo("zeta", zeta);
    echo("delta0", d0); echo("delta", dl); echo("eps", ep);
    two_phase(up(dim * l / mu * lg(d0 / (dl * zeta))), up(dim * ls / mu * lg(dl / ep)));
  } else if (tag == "cd-greedy") {
    const double l = need_pos(in.l, "L"), mu1 = need_pos(in.mu1, "mu1");
    const double ls = need_pos(in.lstar, "Lstar");
    const double d0 = need_pos(in.delta0, "delta0"), dl = need_pos(in.delta, "delta"),
                 ep = need_pos(in.eps, "eps");
    check_split(d0, dl, ep);
    echo("L", l); echo("Lstar", ls); echo("mu1", mu1);
    echo("delta0", d0); echo("delta", dl); echo("eps", ep);
    two_phase(up(l / mu1 * lg(d0 / dl)), up(ls / mu1 * lg(dl / ep)));
  } else if (tag == "sgd") {
    const double lm = need_pos(in.lmax, "Lmax"), mu = need_pos(in.mu, "mu");
    const double lms = need_pos(in.lmax_star, "Lmax_star");
    const double r0 = need_pos(in.dist0_sq, "dist0_sq");
    const double zeta = in.zeta ? need_pos(in.zeta, "zeta") : 0.1;
    const double dl = need_pos(in.delta, "delta"), ep = need_pos(in.eps, "eps");
    check_split(r0, dl, ep);
    echo("Lmax", lm); echo("Lmax_star", lms); echo("mu", mu); echo("dist0_sq", r0);
    echo("zeta", zeta); echo("delta", dl); echo("eps", ep);
    two_phase(up(2.0 * lm / mu * lg(r0 / (dl * zeta))), up(2.0 * lms / mu * lg(dl / ep)));
  } else if (tag == "nag") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double d0 = need_pos(in.delta0, "delta0");
    const double r0 = need_pos(in.dist0_sq, "dist0_sq");
    const double dl = need_pos(in.delta, "delta"), ep = need_pos(in.eps, "eps");
    if (!(dl > ep)) throw InputError("complexity_bound: need delta > eps");
    echo("L", l); echo("Lstar", ls); echo("mu", mu); echo("delta0", d0);
    echo("dist0_sq", r0); echo("delta", dl); echo("eps", ep);
    const double t1 = std::sqrt(2.0 * l / mu) * lg(l / mu * (d0 + 0.5 * mu * r0) / dl);
    const double t2 = std::sqrt(2.0 * ls / mu) * lg(mu / l * dl / ep);
    two_phase(up(t1), up(t2));
  } else if (tag == "nlcg") {
    const double l = need_pos(in.l, "L"), mu = need_pos(in.mu, "mu");
    const double ls = need_pos(in.lstar, "Lstar");
    const double dim = need_pos(in.d, "d");
    const double d0 = need_pos(in.delta0, "delta0"), dl = need_pos(in.delta, "delta"),
                 ep = need_pos(in.eps, "eps");
    check_split(d0, dl, ep);
    echo("L", l); echo("Lstar", ls); echo("mu", mu); echo("d", dim);
    echo("delta0", d0); echo("delta", dl); echo("eps", ep);
    const double kappa2 = (l / mu) * (l / mu);
    const long long t1 = up(0.5 * kappa2 * lg(d0 / dl));
    const long long global_local = up(0.5 * kappa2 * lg(dl / ep));
    const long long accel =
        up(0.5 * std::sqrt(ls / mu) * lg(4.0 * (ls / mu) * (ls / mu) * dl / ep));
    const long long dd = static_cast<long long>(dim);
    const long long t2 = std::min(global_local, dd + std::min(dd, accel));
    two_phase(t1, t2);
    out.explicit_constants = false;
  } else {
    throw InputError("complexity_bound: unknown tag '" + tag + "'");
  }
  return out;
}

// Comparison of the line-search gradient method against the fixed-step
// accelerated method: lhs = Lstar/L against
// rhs = (kappa^{-1/2} ln(delta0/eps) - ln(delta0/delta)) / ln(delta/eps).
// The strict inequality lhs < rhs favors the line-search method; callers
// wanting a clear margin interpret the gap themselves.
struct GdloNagVerdict {
  bool gdlo_faster = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

inline GdloNagVerdict gdlo_vs_nag(double l, double lstar, double mu, double delta0, double delta,
                                  double eps) {
  if (!(l > 0.0 && lstar > 0.0 && mu > 0.0))
    throw InputError("gdlo_vs_nag: constants must be > 0");
  if (!(delta0 > delta && delta > eps && eps > 0.0))
    throw InputError("gdlo_vs_nag: need delta0 > delta > eps > 0");
  const double kappa = l / mu;
  const double rhs =
      (std::log(delta0 / eps) / std::sqrt(kappa) - std::log(delta0 / delta)) /
      std::log(delta / eps);
  const double lhs = lstar / l;
  return {lhs < rhs, lhs, rhs};
}

// Exact squared level-set radius R^2(rho) = max{||w - w*||^2 : f(w) <= rho}
// for a positive-definite quadratic: 2 (rho - f*) / lambda_min(A).
// A singular A has unbounded level sets; that is signaled as infinity.
inline double r2_quadratic(const QuadraticProblem& q, double rho) {
  const double lmin = q.smallest_eigenvalue();
  if (lmin <= 1e-12 * std::max(1.0, q.lipschitz().value_or(1.0)))
    return std::numeric_limits<double>::infinity();
  const double f_star = q.optimum_value().value();
  if (rho < f_star) throw InputError("r2_quadratic: rho must be >= f*");
  return 2.0 * (rho - f_star) / lmin;
}

}  // namespace glopt
