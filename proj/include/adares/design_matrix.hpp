#pragma once

#include "adares/types.hpp"

#include <Eigen/SparseCore>

#include <variant>

namespace adares {

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using DenseMatrix = Eigen::MatrixXd;

// Data matrix A (m × n) of the model g(Ax) + ψ(x). Either dense or
// row-compressed sparse; products are single-threaded so results are
// bit-reproducible for a given storage.
class DesignMatrix {
 public:
  DesignMatrix() = default;

  explicit DesignMatrix(DenseMatrix dense) : storage_(std::move(dense)) { validate(); }
  explicit DesignMatrix(SparseRowMatrix sparse) : storage_(std::move(sparse)) {
    std::get<SparseRowMatrix>(storage_).makeCompressed();
    validate();
  }

  Index rows() const {
    return std::visit([](const auto& a) { return a.rows(); }, storage_);
  }
  Index cols() const {
    return std::visit([](const auto& a) { return a.cols(); }, storage_);
  }
  bool is_sparse() const { return std::holds_alternative<SparseRowMatrix>(storage_); }

  const DenseMatrix* dense() const { return std::get_if<DenseMatrix>(&storage_); }
  const SparseRowMatrix* sparse() const { return std::get_if<SparseRowMatrix>(&storage_); }

  /// out = A x
  void apply(const Vector& x, Vector& out) const {
    detail::require_same_size(x.size(), cols(), "DesignMatrix::apply");
    std::visit([&](const auto& a) { out.noalias() = a * x; }, storage_);
  }
  Vector apply(const Vector& x) const {
    Vector out(rows());
    apply(x, out);
    return out;
  }

  /// out = Aᵀ r
  void apply_transpose(const Vector& r, Vector& out) const {
    detail::require_same_size(r.size(), rows(), "DesignMatrix::apply_transpose");
    std::visit([&](const auto& a) { out.noalias() = a.transpose() * r; }, storage_);
  }
  Vector apply_transpose(const Vector& r) const {
    Vector out(cols());
    apply_transpose(r, out);
    return out;
  }

  /// Σ_ij A_ij² = trace(AᵀA).
  double squared_frobenius() const {
    return std::visit([](const auto& a) { return a.squaredNorm(); }, storage_);
  }

  /// ‖a_j‖² for every row j.
  Vector row_squared_norms() const {
    if (const auto* d = dense()) return d->rowwise().squaredNorm();
    const auto& s = *sparse();
    Vector out = Vector::Zero(s.rows());
    for (Index j = 0; j < s.outerSize(); ++j)
      for (SparseRowMatrix::InnerIterator it(s, j); it; ++it) out[j] += it.value() * it.value();
    return out;
  }

  DenseMatrix to_dense() const {
    if (const auto* d = dense()) return *d;
    return DenseMatrix(*sparse());
  }

 private:
  void validate() const {
    const bool finite = std::visit(
        [](const auto& a) {
          if constexpr (std::is_same_v<std::decay_t<decltype(a)>, SparseRowMatrix>) {
            const double* v = a.valuePtr();
            for (Index i = 0; i < a.nonZeros(); ++i)
              if (!std::isfinite(v[i])) return false;
            return true;
          } else {
            return a.allFinite();
          }
        },
        storage_);
    if (!finite) throw std::domain_error("DesignMatrix: NaN or Inf entry");
  }

  std::variant<DenseMatrix, SparseRowMatrix> storage_{DenseMatrix()};
};

}  // namespace adares
