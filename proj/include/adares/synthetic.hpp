#pragma once

#include "adares/libsvm.hpp"
#include "adares/problem.hpp"

#include <cstdint>
#include <random>

namespace adares {

// Least-squares problem with ψ = 0 and diagonal A whose squared singular
// values are geometrically spaced in [1, cond]. With L = trace(AᵀA) the
// quadratic-growth constant is exactly λ_min(AᵀA)/L, globally.
struct StronglyConvexFixture {
  LassoProblem problem;
  double mu_true;
  Vector x_star;
  double f_star;

  double dist_sq(const Vector& x) const { return weighted_sq_dist(x, x_star, problem.weights()); }
};

inline StronglyConvexFixture synth_strongly_convex(Index n, double cond, std::uint64_t seed) {
  detail::require(n >= 1, "synth_strongly_convex: n must be positive");
  detail::require(cond >= 1.0, "synth_strongly_convex: cond must be >= 1");
  Vector eig(n);
  for (Index i = 0; i < n; ++i)
    eig[i] = n == 1 ? 1.0 : std::pow(cond, static_cast<double>(i) / static_cast<double>(n - 1));
  const Vector sigma = eig.array().sqrt();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector b(n);
  for (Index i = 0; i < n; ++i) b[i] = normal(rng);

  DenseMatrix a = sigma.asDiagonal();
  const double trace = eig.sum();
  Vector x_star = b.array() / sigma.array();
  auto mat = std::make_shared<const DesignMatrix>(std::move(a));
  return StronglyConvexFixture{
      LassoProblem(LeastSquares(mat, std::move(b)), Regularizer::zero(n), trace),
      eig.minCoeff() / trace,
      std::move(x_star),
      0.0,
  };
}

/// Dense Gaussian regression data: b = A x_true + 0.1·noise with a
/// 10%-sparse x_true. Used for desk-scale Lasso experiments.
inline Dataset synth_regression(Index m, Index n, std::uint64_t seed) {
  detail::require(m >= 1 && n >= 1, "synth_regression: empty shape");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  DenseMatrix a(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) a(i, j) = normal(rng);
  Vector x_true = Vector::Zero(n);
  for (Index i = 0; i < n; i += 10) x_true[i] = normal(rng);
  Vector b = a * x_true;
  for (Index i = 0; i < m; ++i) b[i] += 0.1 * normal(rng);
  return Dataset{std::make_shared<const DesignMatrix>(std::move(a)), std::move(b)};
}

/// Dense Gaussian features with ±1 labels from a noisy linear rule.
inline Dataset synth_classification(Index m, Index n, std::uint64_t seed) {
  detail::require(m >= 1 && n >= 1, "synth_classification: empty shape");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  DenseMatrix a(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) a(i, j) = normal(rng);
  Vector w(n);
  for (Index i = 0; i < n; ++i) w[i] = normal(rng);
  Vector b(m);
  for (Index i = 0; i < m; ++i) b[i] = a.row(i).dot(w) + normal(rng) >= 0.0 ? 1.0 : -1.0;
  return Dataset{std::make_shared<const DesignMatrix>(std::move(a)), std::move(b)};
}

}  // namespace adares
