#pragma once

#include "adares/gradient_map.hpp"

#include <limits>

namespace adares {

/// ‖T(x) − x‖²_L, the computable optimality certificate.
template <SmoothFunction S>
double grad_map_norm_sq(const CompositeProblem<S>& p, const Vector& x) {
  return weighted_sq_dist(t_map(p, x), x, p.weights());
}

// Primal–dual gap F(x) − G(y) for y = −α(x)∇g(Ax), where α(x) is the largest
// value in [0, 1] keeping G finite.
struct GapReport {
  double primal = 0.0;
  double dual = 0.0;
  double alpha = 1.0;
  double gap = 0.0;
  double grad_map_sq = std::numeric_limits<double>::quiet_NaN();
};

// Conjugates for the two loss families g(z) of the model g(Ax) + ψ(x).
namespace conjugate {

/// g(z) = ½‖z − b‖²
inline double squared_loss(const Vector& z, const Vector& b) { return 0.5 * (z - b).squaredNorm(); }

/// g*(u) = ½‖u‖² + ⟨b, u⟩
inline double squared_loss_conj(const Vector& u, const Vector& b) { return 0.5 * u.squaredNorm() + b.dot(u); }

/// g(z) = c Σ log(1 + exp(b_j z_j))
inline double logistic_loss(const Vector& z, const Vector& b, double c) {
  double s = 0.0;
  for (Index j = 0; j < z.size(); ++j) s += log1p_exp(b[j] * z[j]);
  return c * s;
}

/// s log s + (1 − s) log(1 − s) on [0, 1] with 0·log 0 = 0.
inline double binary_neg_entropy(double s) {
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  return xlogx(s) + xlogx(1.0 - s);
}

/// g*(u) = Σ_j c·H(u_j / (c b_j)) where H is the binary negative entropy;
/// +∞ outside the domain. Ratios within 1e-12 of [0, 1] are clamped.
inline double logistic_loss_conj(const Vector& u, const Vector& b, double c) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (Index j = 0; j < u.size(); ++j) {
    if (b[j] == 0.0) {
      if (u[j] != 0.0) return kInf;
      total -= c * std::log(2.0);
      continue;
    }
    double s = u[j] / (c * b[j]);
    if (s < -1e-12 || s > 1.0 + 1e-12) return kInf;
    s = std::clamp(s, 0.0, 1.0);
    total += c * binary_neg_entropy(s);
  }
  return total;
}

/// ψ(x) = w‖x‖₁ + (λ₂/2)‖x‖²  ⇒  ψ*(v) = Σ max(|v_i| − w, 0)² / (2λ₂).
inline double elastic_net_conj(const Vector& v, double w, double lambda2) {
  return (v.array().abs() - w).max(0.0).square().sum() / (2.0 * lambda2);
}

}  // namespace conjugate

/// Gap for ½‖Ax − b‖² + λ‖x‖₁. ψ* is the indicator of ‖·‖∞ ≤ λ, so
/// α(x) = min(1, λ/‖Aᵀr‖∞) with r = Ax − b.
inline GapReport dual_gap_lasso(const DesignMatrix& a, const Vector& b, double lambda, const Vector& x) {
  detail::require_same_size(x.size(), a.cols(), "dual_gap_lasso");
  detail::require_same_size(b.size(), a.rows(), "dual_gap_lasso targets");
  const Vector r = a.apply(x) - b;
  const double corr = a.apply_transpose(r).lpNorm<Eigen::Infinity>();
  GapReport rep;
  rep.alpha = corr > lambda ? lambda / corr : 1.0;
  const double rr = r.squaredNorm();
  rep.primal = 0.5 * rr + lambda * x.lpNorm<1>();
  // G(−αr) = −g*(αr) − ψ*(−αAᵀr), the indicator term vanishing by choice of α.
  rep.dual = -(0.5 * rep.alpha * rep.alpha * rr + rep.alpha * b.dot(r));
  rep.gap = rep.primal - rep.dual;
  return rep;
}

/// Gap for c Σ log(1 + exp(b_j a_jᵀx)) + w‖x‖₁ + (λ₂/2)‖x‖². ψ* is finite
/// everywhere when λ₂ > 0, so α(x) = 1.
inline GapReport dual_gap_logistic(const DesignMatrix& a, const Vector& b, double c, double l1_weight,
                                   double lambda2, const Vector& x) {
  if (!(lambda2 > 0.0))
    throw UnsupportedConfiguration("dual_gap_logistic: lambda2 must be positive (conjugate has restricted domain)");
  detail::require_same_size(x.size(), a.cols(), "dual_gap_logistic");
  detail::require_same_size(b.size(), a.rows(), "dual_gap_logistic labels");
  const Vector z = a.apply(x);
  Vector u(z.size());  // u = ∇g(Ax)
  double loss = 0.0;
  double loss_conj = 0.0;
  for (Index j = 0; j < z.size(); ++j) {
    const double t = b[j] * z[j];
    const double sp = log1p_exp(t);
    const double sn = log1p_exp(-t);
    loss += sp;
    // s = σ(t): s log s = −σ(t) log1p(e^{−t}), (1−s) log(1−s) = −σ(−t) log1p(e^{t}).
    if (b[j] != 0.0) loss_conj -= sigmoid(t) * sn + sigmoid(-t) * sp;
    else loss_conj -= std::log(2.0);
    u[j] = c * b[j] * sigmoid(t);
  }
  const Vector v = -a.apply_transpose(u);  // Aᵀy with y = −u
  GapReport rep;
  rep.alpha = 1.0;
  rep.primal = c * loss + l1_weight * x.lpNorm<1>() + 0.5 * lambda2 * x.squaredNorm();
  rep.dual = -conjugate::elastic_net_conj(v, l1_weight, lambda2) - c * loss_conj;
  rep.gap = rep.primal - rep.dual;
  return rep;
}

inline GapReport dual_gap(const CompositeProblem<LeastSquares>& p, const Vector& x) {
  if (p.regularizer().kind() != Regularizer::Kind::L1)
    throw UnsupportedConfiguration("dual_gap: least-squares gap needs an L1 regularizer");
  GapReport rep = dual_gap_lasso(p.smooth().matrix(), p.smooth().targets(), p.regularizer().l1_weight(), x);
  rep.grad_map_sq = grad_map_norm_sq(p, x);
  return rep;
}

inline GapReport dual_gap(const CompositeProblem<Logistic>& p, const Vector& x) {
  if (p.regularizer().kind() != Regularizer::Kind::ElasticNet)
    throw UnsupportedConfiguration("dual_gap: logistic gap needs an elastic-net regularizer");
  const auto& f = p.smooth();
  GapReport rep = dual_gap_logistic(f.matrix(), f.labels(), f.scale(), p.regularizer().l1_weight(),
                                    p.regularizer().l2_weight(), x);
  rep.grad_map_sq = grad_map_norm_sq(p, x);
  return rep;
}

}  // namespace adares
