#pragma once

#include "tangent_llg/common.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace tangent_llg {

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed-row real matrix. Column indices are strictly increasing in
/// every row; instances are immutable once built.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Index nrows, Index ncols);

  /// Duplicate (row, col) entries are summed.
  static SparseMatrix from_triplets(Index nrows, Index ncols,
                                    std::span<const Triplet> entries);
  static SparseMatrix identity(Index n);

  Index rows() const { return nrows_; }
  Index cols() const { return ncols_; }
  Index nonzeros() const { return values_.size(); }

  std::span<const Index> offsets() const { return offsets_; }
  std::span<const Index> column_indices() const { return columns_; }
  std::span<const double> values() const { return values_; }

  /// Stored value at (r, c), zero when the entry is not stored.
  double at(Index r, Index c) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;

  /// xᵀ A y
  double bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  SparseMatrix transpose() const;
  Eigen::VectorXd diagonal() const;
  Eigen::MatrixXd to_dense() const;

  /// Largest |A(i,j)| over stored entries.
  double max_abs() const;

 private:
  Index nrows_ = 0;
  Index ncols_ = 0;
  std::vector<Index> offsets_{0};
  std::vector<Index> columns_;
  std::vector<double> values_;
};

struct ScaledMatrix {
  double coefficient;
  const SparseMatrix* matrix;
};

/// Σ cᵢ Aᵢ over matrices of identical shape; the result's pattern is the
/// union of the operands' patterns.
SparseMatrix linear_combination(std::initializer_list<ScaledMatrix> terms);

struct SolveReport {
  Index iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

struct SolveResult {
  Eigen::VectorXd x;
  SolveReport report;
};

struct SolverOptions {
  double tolerance = 1e-10;
  /// Zero selects 10·n.
  Index max_iterations = 0;
  Index restart = 60;
};

/// Restarted GMRES with right Jacobi preconditioning. Handles nonsymmetric
/// systems; the reported residual is the true ‖Ax − b‖ / ‖b‖.
SolveResult solve(const SparseMatrix& A, const Eigen::VectorXd& b,
                  const SolverOptions& options = {});

inline constexpr Index kDenseSolveLimit = 200;

/// Dense LU solve, only for n ≤ kDenseSolveLimit.
Eigen::VectorXd dense_solve(const SparseMatrix& A, const Eigen::VectorXd& b);

}  // namespace tangent_llg
