#pragma once

#include "glopt/core.hpp"

namespace glopt {

// Largest eigenvalue of a symmetric PSD matrix by power iteration.
// Deterministic start vector; converges when successive Rayleigh quotients
// agree to `tol` relative.
inline double power_iteration_lmax(const Mat& s, double tol = 1e-10, int max_iters = 10000) {
  const Eigen::Index n = s.rows();
  if (n == 0) return 0.0;
  if (s.cols() != n) throw InputError("power_iteration_lmax: matrix not square");

  Vec v = Vec::Ones(n);
  // Break symmetry so eigenvectors orthogonal to (1,...,1) are reachable.
  for (Eigen::Index i = 0; i < n; ++i) v[i] += 1e-3 * static_cast<double>(i);
  v.normalize();

  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vec w = s * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;  // v in the null space and s PSD => lmax reached only if s = 0
    w /= norm;
    const double next = w.dot(s * w);
    if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) return next;
    lambda = next;
    v = std::move(w);
  }
  return lambda;
}

inline Mat gram(const Mat& x) { return x.transpose() * x; }

// lambda_max(X^T X), the squared spectral norm of X.
inline double spectral_norm_sq(const Mat& x) { return power_iteration_lmax(gram(x)); }

// Smallest/largest eigenvalues of a symmetric matrix via a dense solve.
inline std::pair<double, double> sym_eig_range(const Mat& s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InputError("sym_eig_range: eigensolver failed");
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

}  // namespace glopt
