#pragma once

#include "glopt/problems.hpp"
#include "glopt/rng.hpp"

namespace glopt::testing {

// Central finite differences with h = 1e-6 (1 + ||w||); independent oracle
// for gradient implementations.
inline Vec fd_gradient(const Objective& obj, const Vec& w) {
  const double h = 1e-6 * (1.0 + w.norm());
  Vec g(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    Vec wp = w, wm = w;
    wp[i] += h;
    wm[i] -= h;
    g[i] = (obj.value(wp) - obj.value(wm)) / (2.0 * h);
  }
  return g;
}

inline bool grad_matches_fd(const Objective& obj, const Vec& w, double rel_tol = 1e-4) {
  const Vec g = obj.gradient(w);
  const Vec fd = fd_gradient(obj, w);
  return (g - fd).norm() <= rel_tol * (1.0 + g.norm());
}

inline Vec random_vec(SplitMix64& rng, Eigen::Index d, double scale = 1.0) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = scale * rng.normal();
  return v;
}

// SPD quadratic with spectrum spanning [mu, l].
inline QuadraticProblem random_spd_quadratic(SplitMix64& rng, int d, double mu, double l,
                                             double b_scale = 1.0) {
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  const Mat q = Eigen::HouseholderQR<Mat>(g).householderQ();
  Vec ev(d);
  for (int i = 0; i < d; ++i)
    ev[i] = d == 1 ? l : mu + (l - mu) * static_cast<double>(i) / static_cast<double>(d - 1);
  Mat a = q * ev.asDiagonal() * q.transpose();
  a = 0.5 * (a + a.transpose()).eval();
  return QuadraticProblem(std::move(a), random_vec(rng, d, b_scale));
}

}  // namespace glopt::testing
