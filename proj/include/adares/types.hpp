#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace adares {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Thrown by input parsers; carries the 1-based line number of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool cond, const char* what) {
  if (!cond) throw std::domain_error(what);
}

inline void require_same_size(Index a, Index b, const char* what) {
  if (a != b) throw std::domain_error(std::string(what) + ": dimension mismatch (" +
                                      std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace detail

/// ‖x‖²_v = Σ v_i x_i².
inline double weighted_sq_norm(const Vector& x, const Vector& v) {
  return (v.array() * x.array().square()).sum();
}

/// ‖a − b‖²_v without materialising the difference.
inline double weighted_sq_dist(const Vector& a, const Vector& b, const Vector& v) {
  return (v.array() * (a - b).array().square()).sum();
}

inline bool all_finite(const Vector& x) { return x.allFinite(); }

}  // namespace adares
