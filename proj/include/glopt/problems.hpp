#pragma once

#include "glopt/core.hpp"
#include "glopt/linalg.hpp"

#include <algorithm>
#include <memory>
#include <optional>

namespace glopt {

// A differentiable objective on R^d. Concrete problems are immutable after
// construction and safe to share across concurrent evaluations.
//
// Finite sums expose n components with f(w) = sum_i f_i(w); everything else
// reports a single component and refuses component access.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Eigen::Index dim() const = 0;

  double value(const Vec& w) const {
    check_point(w);
    return value_impl(w);
  }

  Vec gradient(const Vec& w) const {
    check_point(w);
    return gradient_impl(w);
  }

  // j-th partial derivative; equals gradient(w)[j].
  double partial(const Vec& w, Eigen::Index j) const {
    check_point(w);
    if (j < 0 || j >= dim()) throw InputError("partial: coordinate index out of range");
    return partial_impl(w, j);
  }

  virtual bool finite_sum() const { return false; }
  virtual Eigen::Index components() const { return 1; }

  double component_value(Eigen::Index i, const Vec& w) const {
    check_component(i, w);
    return component_value_impl(i, w);
  }

  Vec component_gradient(Eigen::Index i, const Vec& w) const {
    check_component(i, w);
    return component_gradient_impl(i, w);
  }

  // Known constants, when available.
  virtual std::optional<double> lipschitz() const { return std::nullopt; }
  virtual std::optional<double> strong_convexity() const { return std::nullopt; }
  virtual std::optional<double> optimum_value() const { return std::nullopt; }
  virtual std::optional<Vec> minimizer() const { return std::nullopt; }

  // Spectral norm of the Hessian at w, when the problem can report it.
  virtual std::optional<double> hessian_spectral_norm(const Vec&) const { return std::nullopt; }

 protected:
  virtual double value_impl(const Vec& w) const = 0;
  virtual Vec gradient_impl(const Vec& w) const = 0;
  virtual double partial_impl(const Vec& w, Eigen::Index j) const {
    return gradient_impl(w)[j];
  }
  virtual double component_value_impl(Eigen::Index, const Vec& w) const { return value_impl(w); }
  virtual Vec component_gradient_impl(Eigen::Index, const Vec& w) const { return gradient_impl(w); }

  void check_point(const Vec& w) const {
    require_dim(w, dim(), "w");
    require_finite(w, "w");
  }

  void check_component(Eigen::Index i, const Vec& w) const {
    if (!finite_sum())
      throw UnsupportedCapability("component access requires a finite-sum objective");
    if (i < 0 || i >= components()) throw InputError("component index out of range");
    check_point(w);
  }
};

// f(w) = 1/2 w'Aw - b'w + c with A symmetric PSD.
class QuadraticProblem : public Objective {
 public:
  QuadraticProblem(Mat a, Vec b, double c = 0.0)
      : a_(std::move(a)), b_(std::move(b)), c_(c) {
    if (a_.rows() != a_.cols()) throw InputError("QuadraticProblem: A not square");
    require_dim(b_, a_.rows(), "b");
    if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw InputError("QuadraticProblem: A not symmetric within 1e-12");
    auto [lmin, lmax] = sym_eig_range(a_);
    if (lmin < -1e-10) throw InputError("QuadraticProblem: A not positive semidefinite");
    lmax_ = lmax;
    lmin_ = std::max(lmin, 0.0);
    if (lmin_ > 1e-12 * std::max(1.0, lmax_)) {
      w_star_ = a_.ldlt().solve(b_);
      f_star_ = value_impl(*w_star_);
    }
  }

  Eigen::Index dim() const override { return a_.rows(); }
  const Mat& matrix() const { return a_; }
  const Vec& linear() const { return b_; }

  std::optional<double> lipschitz() const override { return lmax_; }
  std::optional<double> strong_convexity() const override {
    if (lmin_ > 0.0) return lmin_;
    return std::nullopt;
  }
  std::optional<double> optimum_value() const override { return f_star_; }
  std::optional<Vec> minimizer() const override { return w_star_; }
  std::optional<double> hessian_spectral_norm(const Vec&) const override { return lmax_; }

  double smallest_eigenvalue() const { return lmin_; }

 protected:
  double value_impl(const Vec& w) const override {
    return 0.5 * w.dot(a_ * w) - b_.dot(w) + c_;
  }
  Vec gradient_impl(const Vec& w) const override { return a_ * w - b_; }
  double partial_impl(const Vec& w, Eigen::Index j) const override {
    return a_.row(j).dot(w) - b_[j];
  }

 private:
  Mat a_;
  Vec b_;
  double c_;
  double lmax_ = 0.0, lmin_ = 0.0;
  std::optional<Vec> w_star_;
  std::optional<double> f_star_;
};

// ln(1 + e^z) without overflow.
inline double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

// Binary logistic regression: f(w) = sum_i ln(1 + exp(-y_i <x_i, w>)) + (lambda/2)||w||^2.
class LogisticProblem : public Objective {
 public:
  LogisticProblem(Mat x, Vec y, double lambda = 0.0)
      : x_(std::move(x)), y_(std::move(y)), lambda_(lambda) {
    require_dim(y_, x_.rows(), "y");
    if (lambda_ < 0.0) throw InputError("LogisticProblem: lambda must be >= 0");
    for (Eigen::Index i = 0; i < y_.size(); ++i)
      if (y_[i] != 1.0 && y_[i] != -1.0)
        throw InputError("LogisticProblem: labels must be in {-1,+1}");
    xnorm_sq_ = spectral_norm_sq(x_);
  }

  Eigen::Index dim() const override { return x_.cols(); }
  bool finite_sum() const override { return true; }
  Eigen::Index components() const override { return x_.rows(); }

  const Mat& data() const { return x_; }
  const Vec& labels() const { return y_; }
  double ridge() const { return lambda_; }

  // lambda_max(X^T X), by power iteration.
  double data_norm_sq() const { return xnorm_sq_; }

  std::optional<double> lipschitz() const override { return 0.25 * xnorm_sq_ + lambda_; }
  std::optional<double> strong_convexity() const override {
    if (lambda_ > 0.0) return lambda_;
    return std::nullopt;
  }

  // Hessian of the loss (plus ridge): X^T D X + lambda I with
  // D_ii = p_i (1 - p_i), p_i = sigmoid(y_i <x_i, w>).
  Mat hessian(const Vec& w) const {
    const Vec z = x_ * w;
    Mat h = Mat::Zero(dim(), dim());
    for (Eigen::Index i = 0; i < x_.rows(); ++i) {
      const double p = 1.0 / (1.0 + std::exp(-y_[i] * z[i]));
      h += p * (1.0 - p) * (x_.row(i).transpose() * x_.row(i));
    }
    h += lambda_ * Mat::Identity(dim(), dim());
    return h;
  }

  std::optional<double> hessian_spectral_norm(const Vec& w) const override {
    return sym_eig_range(hessian(w)).second;
  }

 protected:
  double value_impl(const Vec& w) const override {
    const Vec z = x_ * w;
    double s = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) s += softplus(-y_[i] * z[i]);
    return s + 0.5 * lambda_ * w.squaredNorm();
  }

  Vec gradient_impl(const Vec& w) const override {
    const Vec z = x_ * w;
    Vec g = lambda_ * w;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double s = 1.0 / (1.0 + std::exp(y_[i] * z[i]));  // sigmoid(-y_i z_i)
      g -= (y_[i] * s) * x_.row(i).transpose();
    }
    return g;
  }

  // Component i carries its sample loss plus an equal 1/n share of the ridge.
  double component_value_impl(Eigen::Index i, const Vec& w) const override {
    const double z = x_.row(i).dot(w);
    const double share = lambda_ / static_cast<double>(components());
    return softplus(-y_[i] * z) + 0.5 * share * w.squaredNorm();
  }

  Vec component_gradient_impl(Eigen::Index i, const Vec& w) const override {
    const double z = x_.row(i).dot(w);
    const double s = 1.0 / (1.0 + std::exp(y_[i] * z));
    const double share = lambda_ / static_cast<double>(components());
    return share * w - (y_[i] * s) * x_.row(i).transpose();
  }

 private:
  Mat x_;
  Vec y_;
  double lambda_;
  double xnorm_sq_;
};

// f(w) = sum_i 1/2 (<x_i, w> - t_i)^2.
class LeastSquaresProblem : public Objective {
 public:
  LeastSquaresProblem(Mat x, Vec t) : x_(std::move(x)), t_(std::move(t)) {
    require_dim(t_, x_.rows(), "t");
    auto [lmin, lmax] = sym_eig_range(gram(x_));
    lmax_ = lmax;
    lmin_ = std::max(lmin, 0.0);
    if (lmin_ > 1e-12 * std::max(1.0, lmax_)) {
      w_star_ = gram(x_).ldlt().solve(x_.transpose() * t_);
      f_star_ = value_impl(*w_star_);
    }
  }

  Eigen::Index dim() const override { return x_.cols(); }
  bool finite_sum() const override { return true; }
  Eigen::Index components() const override { return x_.rows(); }

  const Mat& data() const { return x_; }
  const Vec& targets() const { return t_; }

  double component_lipschitz(Eigen::Index i) const { return x_.row(i).squaredNorm(); }
  double max_component_lipschitz() const {
    double m = 0.0;
    for (Eigen::Index i = 0; i < x_.rows(); ++i) m = std::max(m, component_lipschitz(i));
    return m;
  }

  std::optional<double> lipschitz() const override { return lmax_; }
  std::optional<double> strong_convexity() const override {
    if (lmin_ > 0.0) return lmin_;
    return std::nullopt;
  }
  std::optional<double> optimum_value() const override { return f_star_; }
  std::optional<Vec> minimizer() const override { return w_star_; }
  std::optional<double> hessian_spectral_norm(const Vec&) const override { return lmax_; }

 protected:
  double value_impl(const Vec& w) const override {
    return 0.5 * (x_ * w - t_).squaredNorm();
  }
  Vec gradient_impl(const Vec& w) const override {
    return x_.transpose() * (x_ * w - t_);
  }
  double component_value_impl(Eigen::Index i, const Vec& w) const override {
    const double r = x_.row(i).dot(w) - t_[i];
    return 0.5 * r * r;
  }
  Vec component_gradient_impl(Eigen::Index i, const Vec& w) const override {
    const double r = x_.row(i).dot(w) - t_[i];
    return r * x_.row(i).transpose();
  }

 private:
  Mat x_;
  Vec t_;
  double lmax_ = 0.0, lmin_ = 0.0;
  std::optional<Vec> w_star_;
  std::optional<double> f_star_;
};

// Separable robust-regression loss with residuals r_i = w_i - t_i:
// quadratic r^2/(2 tau) for |r| <= tau, linear |r| - tau/2 beyond. Each
// residual contributes Hessian 1/tau while in its quadratic regime.
class HuberProblem : public Objective {
 public:
  HuberProblem(Vec targets, double tau) : t_(std::move(targets)), tau_(tau) {
    if (!(tau_ > 0.0)) throw InputError("HuberProblem: tau must be > 0");
  }

  Eigen::Index dim() const override { return t_.size(); }
  double threshold() const { return tau_; }
  const Vec& targets() const { return t_; }

  std::optional<double> lipschitz() const override { return 1.0 / tau_; }
  std::optional<double> optimum_value() const override { return 0.0; }
  std::optional<Vec> minimizer() const override { return t_; }

  bool all_quadratic(const Vec& w) const {
    return ((w - t_).cwiseAbs().array() <= tau_).all();
  }

  std::optional<double> hessian_spectral_norm(const Vec& w) const override {
    double m = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i)
      if (std::abs(w[i] - t_[i]) <= tau_) m = 1.0 / tau_;
    return m;
  }

 protected:
  double value_impl(const Vec& w) const override {
    double s = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i) {
      const double r = w[i] - t_[i];
      s += std::abs(r) <= tau_ ? r * r / (2.0 * tau_) : std::abs(r) - 0.5 * tau_;
    }
    return s;
  }
  Vec gradient_impl(const Vec& w) const override {
    Vec g(dim());
    for (Eigen::Index i = 0; i < dim(); ++i) {
      const double r = w[i] - t_[i];
      g[i] = std::abs(r) <= tau_ ? r / tau_ : (r > 0.0 ? 1.0 : -1.0);
    }
    return g;
  }
  double partial_impl(const Vec& w, Eigen::Index j) const override {
    const double r = w[j] - t_[j];
    return std::abs(r) <= tau_ ? r / tau_ : (r > 0.0 ? 1.0 : -1.0);
  }

 private:
  Vec t_;
  double tau_;
};

// One-dimensional test function that is L-smooth everywhere and
// Lstar-smooth on [-r, r] = {f <= Lstar r^2 / 2}:
//   f(x) = Lstar/2 x^2                              for |x| <= r
//   f(x) = L/2 x^2 - (L - Lstar) r |x| + (L - Lstar) r^2 / 2   otherwise
// (C^1 glue); mu = Lstar, f* = 0, w* = 0.
class TwoRegimeProblem : public Objective {
 public:
  TwoRegimeProblem(double r, double l, double lstar) : r_(r), l_(l), lstar_(lstar) {
    if (!(r_ > 0.0)) throw InputError("TwoRegimeProblem: r must be > 0");
    if (!(lstar_ > 0.0 && lstar_ <= l_))
      throw InputError("TwoRegimeProblem: need 0 < Lstar <= L");
  }

  Eigen::Index dim() const override { return 1; }
  double radius() const { return r_; }
  double local_lipschitz() const { return lstar_; }
  // Largest sublevel threshold on which the local constant is valid.
  double delta_cap() const { return 0.5 * lstar_ * r_ * r_; }

  std::optional<double> lipschitz() const override { return l_; }
  std::optional<double> strong_convexity() const override { return lstar_; }
  std::optional<double> optimum_value() const override { return 0.0; }
  std::optional<Vec> minimizer() const override { return Vec::Zero(1); }
  std::optional<double> hessian_spectral_norm(const Vec& w) const override {
    return std::abs(w[0]) <= r_ ? lstar_ : l_;
  }

 protected:
  double value_impl(const Vec& w) const override {
    const double x = w[0];
    const double ax = std::abs(x);
    if (ax <= r_) return 0.5 * lstar_ * x * x;
    return 0.5 * l_ * x * x - (l_ - lstar_) * r_ * ax + 0.5 * (l_ - lstar_) * r_ * r_;
  }
  Vec gradient_impl(const Vec& w) const override {
    Vec g(1);
    const double x = w[0];
    if (std::abs(x) <= r_)
      g[0] = lstar_ * x;
    else
      g[0] = l_ * x - (l_ - lstar_) * r_ * (x > 0.0 ? 1.0 : -1.0);
    return g;
  }

 private:
  double r_, l_, lstar_;
};

// Counts every value/gradient call made through it. One wrapper per
// optimizer run; the wrapped objective stays shared and immutable.
class CountedObjective : public Objective {
 public:
  explicit CountedObjective(const Objective& inner) : inner_(inner) {}

  Eigen::Index dim() const override { return inner_.dim(); }
  bool finite_sum() const override { return inner_.finite_sum(); }
  Eigen::Index components() const override { return inner_.components(); }
  std::optional<double> lipschitz() const override { return inner_.lipschitz(); }
  std::optional<double> strong_convexity() const override { return inner_.strong_convexity(); }
  std::optional<double> optimum_value() const override { return inner_.optimum_value(); }
  std::optional<Vec> minimizer() const override { return inner_.minimizer(); }
  std::optional<double> hessian_spectral_norm(const Vec& w) const override {
    return inner_.hessian_spectral_norm(w);
  }

  long feval() const { return feval_; }
  long geval() const { return geval_; }

 protected:
  double value_impl(const Vec& w) const override {
    ++feval_;
    return inner_.value(w);
  }
  Vec gradient_impl(const Vec& w) const override {
    ++geval_;
    return inner_.gradient(w);
  }
  double partial_impl(const Vec& w, Eigen::Index j) const override {
    ++geval_;
    return inner_.partial(w, j);
  }
  double component_value_impl(Eigen::Index i, const Vec& w) const override {
    ++feval_;
    return inner_.component_value(i, w);
  }
  Vec component_gradient_impl(Eigen::Index i, const Vec& w) const override {
    ++geval_;
    return inner_.component_gradient(i, w);
  }

 private:
  const Objective& inner_;
  mutable long feval_ = 0;
  mutable long geval_ = 0;
};

}  // namespace glopt
