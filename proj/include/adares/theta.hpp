#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace adares {

/// Next momentum coefficient: the positive root of X² + θ²X − θ² = 0.
///
/// Evaluated as 2θ / (θ + √(θ² + 4)), which is the same root with the
/// subtraction removed, so it stays accurate when θ is tiny.
inline double theta_next(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::domain_error("theta_next: theta must lie in (0, 1]");
  return 2.0 * theta / (theta + std::sqrt(theta * theta + 4.0));
}

/// Momentum coefficient together with its iteration index. Starts at θ_0 = 1.
struct ThetaState {
  std::int64_t k = 0;
  double theta = 1.0;

  void advance() {
    theta = theta_next(theta);
    ++k;
  }
};

/// θ_k computed incrementally from θ_0 = 1.
inline double theta_at(std::int64_t k) {
  if (k < 0) throw std::domain_error("theta_at: negative index");
  ThetaState st;
  while (st.k < k) st.advance();
  return st.theta;
}

/// θ_0 … θ_{count−1}.
inline std::vector<double> theta_sequence(std::int64_t count) {
  if (count < 1) throw std::domain_error("theta_sequence: length must be positive");
  std::vector<double> seq;
  seq.reserve(static_cast<std::size_t>(count));
  ThetaState st;
  seq.push_back(st.theta);
  while (static_cast<std::int64_t>(seq.size()) < count) {
    st.advance();
    seq.push_back(st.theta);
  }
  return seq;
}

}  // namespace adares
