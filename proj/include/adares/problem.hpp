#pragma once

#include "adares/regularizer.hpp"
#include "adares/smooth.hpp"

#include <optional>

namespace adares {

// F = f + ψ together with the smoothness weights L of f:
//   f(x) ≤ f(y) + ⟨∇f(y), x − y⟩ + ½‖x − y‖²_L.
template <SmoothFunction Smooth>
class CompositeProblem {
 public:
  using smooth_type = Smooth;

  CompositeProblem(Smooth smooth, Regularizer reg, Vector lipschitz)
      : smooth_(std::move(smooth)), reg_(std::move(reg)), lipschitz_(std::move(lipschitz)) {
    detail::require_same_size(smooth_.dimension(), reg_.dimension(), "CompositeProblem regularizer");
    detail::require_same_size(smooth_.dimension(), lipschitz_.size(), "CompositeProblem weights");
    detail::require((lipschitz_.array() > 0.0).all() && lipschitz_.allFinite(),
                    "CompositeProblem: smoothness weights must be positive and finite");
  }

  /// Uniform weights: L_i = lipschitz for every coordinate.
  CompositeProblem(Smooth smooth, Regularizer reg, double lipschitz)
      : CompositeProblem(std::move(smooth), std::move(reg), Vector::Constant(reg.dimension(), lipschitz)) {}

  Index dimension() const { return lipschitz_.size(); }
  const Smooth& smooth() const { return smooth_; }
  const Regularizer& regularizer() const { return reg_; }
  const Vector& weights() const { return lipschitz_; }

  double value(const Vector& x) const { return smooth_.value(x) + reg_.value(x); }

 private:
  Smooth smooth_;
  Regularizer reg_;
  Vector lipschitz_;
};

template <SmoothFunction Smooth>
double F_value(const CompositeProblem<Smooth>& p, const Vector& x) {
  detail::require_same_size(x.size(), p.dimension(), "F_value");
  return p.value(x);
}

/// trace(AᵀA), the uniform smoothness constant used for least squares.
inline double lipschitz_scalar_lasso(const DesignMatrix& a) {
  const double tr = a.squared_frobenius();
  detail::require(tr > 0.0, "lipschitz_scalar_lasso: all-zero matrix");
  return tr;
}

/// ‖Aᵀb‖∞
inline double correlation_inf_norm(const DesignMatrix& a, const Vector& b) {
  return a.apply_transpose(b).lpNorm<Eigen::Infinity>();
}

/// λ₁ / (8‖Aᵀb‖∞) · Σ_j Σ_i (b_j A_ji)², an upper bound on the smoothness
/// constant of the logistic loss scaled by c = λ₁ / (2‖Aᵀb‖∞).
inline double lipschitz_scalar_logistic(const DesignMatrix& a, const Vector& b, double lambda1) {
  detail::require(lambda1 > 0.0, "lipschitz_scalar_logistic: lambda1 must be positive");
  const double corr = correlation_inf_norm(a, b);
  detail::require(corr > 0.0, "lipschitz_scalar_logistic: ||A^T b||_inf is zero");
  const double mass = (b.array().square() * a.row_squared_norms().array()).sum();
  return lambda1 / (8.0 * corr) * mass;
}

using LassoProblem = CompositeProblem<LeastSquares>;
using LogisticProblem = CompositeProblem<Logistic>;

/// ½‖Ax − b‖² + (‖Aᵀb‖∞/λ₁)‖x‖₁ with L = trace(AᵀA).
inline LassoProblem make_lasso(std::shared_ptr<const DesignMatrix> a, Vector b, double lambda1) {
  detail::require(lambda1 > 0.0, "make_lasso: lambda1 must be positive");
  const Index n = a->cols();
  const double lambda = correlation_inf_norm(*a, b) / lambda1;
  const double lip = lipschitz_scalar_lasso(*a);
  return LassoProblem(LeastSquares(std::move(a), std::move(b)), Regularizer::l1(n, lambda), lip);
}

/// c Σ log(1 + exp(b_j a_jᵀx)) + ‖x‖₁ + (λ₂/2)‖x‖² with c = λ₁/(2‖Aᵀb‖∞).
/// When λ₂ is not given it defaults to L/(10n).
inline LogisticProblem make_logistic(std::shared_ptr<const DesignMatrix> a, Vector b, double lambda1,
                                     std::optional<double> lambda2 = std::nullopt) {
  const Index n = a->cols();
  const double lip = lipschitz_scalar_logistic(*a, b, lambda1);
  const double c = lambda1 / (2.0 * correlation_inf_norm(*a, b));
  const double l2 = lambda2.value_or(lip / (10.0 * static_cast<double>(n)));
  return LogisticProblem(Logistic(std::move(a), std::move(b), c), Regularizer::elastic_net(n, 1.0, l2), lip);
}

}  // namespace adares
