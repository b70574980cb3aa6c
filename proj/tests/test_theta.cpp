#include "adares/theta.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

namespace {

using adares::theta_next;
using adares::theta_sequence;

// Bisection on a sign-changing function over [lo, hi]; independent of the closed form.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0) == (f(mid) < 0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(ThetaNext, FromOneIsGoldenRatioConjugate) {
  const double oracle = bisect([](double x) { return x * x + x - 1.0; }, 0.0, 1.0);
  EXPECT_NEAR(oracle, 0.6180339887498949, 1e-15);
  EXPECT_NEAR(theta_next(1.0), oracle, 1e-15);
  EXPECT_NEAR(theta_next(1.0), (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
}

TEST(ThetaNext, SatisfiesRecursionAtHalf) {
  // (1 − X)/X² = 1/0.5² = 4  ⇒  X = (√17 − 1)/8.
  const double oracle = bisect([](double x) { return (1.0 - x) / (x * x) - 4.0; }, 0.01, 1.0);
  EXPECT_NEAR(oracle, 0.3903882032022076, 1e-14);
  EXPECT_NEAR(theta_next(0.5), oracle, 1e-14);
}

TEST(ThetaNext, RejectsOutOfRange) {
  EXPECT_THROW(theta_next(0.0), std::domain_error);
  EXPECT_THROW(theta_next(-0.1), std::domain_error);
  EXPECT_THROW(theta_next(1.5), std::domain_error);
  EXPECT_THROW(theta_next(std::nan("")), std::domain_error);
}

TEST(ThetaNext, AccurateForTinyTheta) {
  // Root of X² + θ²X − θ² ≈ θ − θ²/2 for small θ.
  const double th = 1e-9;
  const double next = theta_next(th);
  EXPECT_LT(next, th);
  EXPECT_NEAR(next, th - th * th / 2.0, 1e-24);
}

TEST(ThetaSequence, ShortSequences) {
  EXPECT_EQ(theta_sequence(1), std::vector<double>{1.0});
  const auto two = theta_sequence(2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], 1.0);
  EXPECT_NEAR(two[1], 0.6180339887498949, 1e-15);
  const auto five = theta_sequence(5);
  for (std::size_t k = 0; k + 1 < five.size(); ++k) EXPECT_LT(five[k + 1], five[k]);
  EXPECT_THROW(theta_sequence(0), std::domain_error);
}

TEST(ThetaSequence, BoundsAndRecursionUpToMillion) {
  adares::ThetaState st;
  for (; st.k <= 1'000'000; st.advance()) {
    const double k = static_cast<double>(st.k);
    ASSERT_GE(st.theta, 1.0 / (k + 1.0)) << "k=" << st.k;
    ASSERT_LE(st.theta, 2.0 / (k + 2.0)) << "k=" << st.k;
    const double next = theta_next(st.theta);
    const double lhs = (1.0 - next) / (next * next);
    const double rhs = 1.0 / (st.theta * st.theta);
    ASSERT_LE(std::abs(lhs - rhs), 1e-12 * rhs) << "k=" << st.k;
    ASSERT_LT(next, st.theta);
  }
}

TEST(ThetaAt, MatchesSequence) {
  const auto seq = theta_sequence(50);
  for (std::size_t k = 0; k < seq.size(); ++k) EXPECT_EQ(adares::theta_at(static_cast<std::int64_t>(k)), seq[k]);
}

}  // namespace
