#pragma once

#include "adares/design_matrix.hpp"

#include <concepts>
#include <memory>
#include <utility>

namespace adares {

/// Differentiable convex part f of F = f + ψ.
template <class S>
concept SmoothFunction = requires(const S& s, const Vector& x, Vector& g) {
  { s.dimension() } -> std::convertible_to<Index>;
  { s.value(x) } -> std::convertible_to<double>;
  { s.gradient(x, g) };
  { s.value_and_gradient(x, g) } -> std::convertible_to<double>;
};

/// log(1 + eᵗ) without overflow.
inline double log1p_exp(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

/// 1 / (1 + e⁻ᵗ) without overflow.
inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// f(x) = ½‖Ax − b‖²
class LeastSquares {
 public:
  LeastSquares(std::shared_ptr<const DesignMatrix> a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
    detail::require(a_ != nullptr, "LeastSquares: null matrix");
    detail::require_same_size(b_.size(), a_->rows(), "LeastSquares targets");
  }
  LeastSquares(DesignMatrix a, Vector b)
      : LeastSquares(std::make_shared<const DesignMatrix>(std::move(a)), std::move(b)) {}

  Index dimension() const { return a_->cols(); }
  const DesignMatrix& matrix() const { return *a_; }
  const std::shared_ptr<const DesignMatrix>& matrix_ptr() const { return a_; }
  const Vector& targets() const { return b_; }

  double value(const Vector& x) const {
    Vector r = a_->apply(x);
    r -= b_;
    return 0.5 * r.squaredNorm();
  }

  void gradient(const Vector& x, Vector& g) const { value_and_gradient(x, g); }

  double value_and_gradient(const Vector& x, Vector& g) const {
    Vector r = a_->apply(x);
    r -= b_;
    a_->apply_transpose(r, g);
    return 0.5 * r.squaredNorm();
  }

 private:
  std::shared_ptr<const DesignMatrix> a_;
  Vector b_;
};

// f(x) = c Σ_j log(1 + exp(b_j a_jᵀx)).
//
// The sign inside the exponential follows the model exactly as written; labels
// are used as given (pass −b to get the conventional −b_j a_jᵀx form).
class Logistic {
 public:
  Logistic(std::shared_ptr<const DesignMatrix> a, Vector b, double c) : a_(std::move(a)), b_(std::move(b)), c_(c) {
    detail::require(a_ != nullptr, "Logistic: null matrix");
    detail::require_same_size(b_.size(), a_->rows(), "Logistic labels");
    detail::require(c_ > 0.0 && std::isfinite(c_), "Logistic: scale must be positive");
  }
  Logistic(DesignMatrix a, Vector b, double c)
      : Logistic(std::make_shared<const DesignMatrix>(std::move(a)), std::move(b), c) {}

  Index dimension() const { return a_->cols(); }
  const DesignMatrix& matrix() const { return *a_; }
  const std::shared_ptr<const DesignMatrix>& matrix_ptr() const { return a_; }
  const Vector& labels() const { return b_; }
  double scale() const { return c_; }

  double value(const Vector& x) const {
    const Vector z = a_->apply(x);
    double s = 0.0;
    for (Index j = 0; j < z.size(); ++j) s += log1p_exp(b_[j] * z[j]);
    return c_ * s;
  }

  void gradient(const Vector& x, Vector& g) const { value_and_gradient(x, g); }

  double value_and_gradient(const Vector& x, Vector& g) const {
    Vector z = a_->apply(x);
    double s = 0.0;
    for (Index j = 0; j < z.size(); ++j) {
      const double t = b_[j] * z[j];
      s += log1p_exp(t);
      z[j] = c_ * b_[j] * sigmoid(t);
    }
    a_->apply_transpose(z, g);
    return c_ * s;
  }

 private:
  std::shared_ptr<const DesignMatrix> a_;
  Vector b_;
  double c_;
};

inline std::pair<double, Vector> least_squares_value_grad(const DesignMatrix& a, const Vector& b, const Vector& x) {
  detail::require_same_size(b.size(), a.rows(), "least_squares_value_grad targets");
  Vector r = a.apply(x) - b;
  return {0.5 * r.squaredNorm(), a.apply_transpose(r)};
}

inline std::pair<double, Vector> logistic_value_grad(const DesignMatrix& a, const Vector& b, double c, const Vector& x) {
  detail::require_same_size(b.size(), a.rows(), "logistic_value_grad labels");
  detail::require(c > 0.0, "logistic_value_grad: scale must be positive");
  Vector z = a.apply(x);
  double s = 0.0;
  for (Index j = 0; j < z.size(); ++j) {
    const double t = b[j] * z[j];
    s += log1p_exp(t);
    z[j] = c * b[j] * sigmoid(t);
  }
  return {c * s, a.apply_transpose(z)};
}

}  // namespace adares
