#pragma once

#include "adares/types.hpp"

namespace adares {

// The simple nonsmooth part ψ. Three closed-form families are supported:
//   Zero          ψ(x) = 0
//   L1            ψ(x) = λ‖x‖₁
//   ElasticNet    ψ(x) = λ₁‖x‖₁ + (λ₂/2)‖x‖²
class Regularizer {
 public:
  enum class Kind { Zero, L1, ElasticNet };

  static Regularizer zero(Index n) { return Regularizer(Kind::Zero, n, 0.0, 0.0); }
  static Regularizer l1(Index n, double lambda) {
    detail::require(lambda >= 0.0 && std::isfinite(lambda), "Regularizer::l1: weight must be finite and >= 0");
    return Regularizer(Kind::L1, n, lambda, 0.0);
  }
  static Regularizer elastic_net(Index n, double lambda1, double lambda2) {
    detail::require(lambda1 >= 0.0 && std::isfinite(lambda1), "Regularizer::elastic_net: lambda1 must be >= 0");
    detail::require(lambda2 >= 0.0 && std::isfinite(lambda2), "Regularizer::elastic_net: lambda2 must be >= 0");
    return Regularizer(Kind::ElasticNet, n, lambda1, lambda2);
  }

  Kind kind() const { return kind_; }
  Index dimension() const { return n_; }
  double l1_weight() const { return l1_; }
  double l2_weight() const { return l2_; }

  double value(const Vector& x) const {
    detail::require_same_size(x.size(), n_, "Regularizer::value");
    switch (kind_) {
      case Kind::Zero: return 0.0;
      case Kind::L1: return l1_ * x.lpNorm<1>();
      case Kind::ElasticNet: return l1_ * x.lpNorm<1>() + 0.5 * l2_ * x.squaredNorm();
    }
    return 0.0;
  }

  /// out = argmin_y ½‖x − y‖²_w + ψ(y) with w_i = scale · weights_i.
  ///
  /// `scale` lets callers use a rescaled metric (θL in the APG z-update)
  /// without building a temporary weight vector.
  void prox(const Vector& weights, double scale, const Vector& x, Vector& out) const {
    detail::require_same_size(weights.size(), n_, "Regularizer::prox weights");
    detail::require_same_size(x.size(), n_, "Regularizer::prox point");
    detail::require(scale > 0.0, "Regularizer::prox: nonpositive weight");
    out.resize(n_);
    switch (kind_) {
      case Kind::Zero:
        out = x;
        return;
      case Kind::L1:
        for (Index i = 0; i < n_; ++i) {
          const double w = scale * weights[i];
          detail::require(w > 0.0, "Regularizer::prox: nonpositive weight");
          out[i] = soft_threshold(x[i], l1_ / w);
        }
        return;
      case Kind::ElasticNet:
        for (Index i = 0; i < n_; ++i) {
          const double w = scale * weights[i];
          detail::require(w > 0.0, "Regularizer::prox: nonpositive weight");
          out[i] = soft_threshold(x[i], l1_ / w) * (w / (w + l2_));
        }
        return;
    }
  }

  Vector prox(const Vector& weights, const Vector& x) const {
    Vector out(n_);
    prox(weights, 1.0, x, out);
    return out;
  }

  static double soft_threshold(double v, double tau) {
    if (v > tau) return v - tau;
    if (v < -tau) return v + tau;
    return 0.0;
  }

 private:
  Regularizer(Kind kind, Index n, double l1, double l2) : kind_(kind), n_(n), l1_(l1), l2_(l2) {
    detail::require(n >= 1, "Regularizer: dimension must be positive");
  }

  Kind kind_;
  Index n_;
  double l1_;
  double l2_;
};

}  // namespace adares
