#include "tangent_llg/linalg.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tangent_llg {

SparseMatrix::SparseMatrix(Index nrows, Index ncols)
    : nrows_(nrows), ncols_(ncols), offsets_(nrows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(Index nrows, Index ncols,
                                         std::span<const Triplet> entries) {
  SparseMatrix A(nrows, ncols);
  std::vector<Index> count(nrows, 0);
  for (const auto& e : entries) {
    if (e.row >= nrows || e.col >= ncols) {
      throw InvalidArgument("triplet (" + std::to_string(e.row) + ", " +
                            std::to_string(e.col) + ") out of range for " +
                            std::to_string(nrows) + "x" +
                            std::to_string(ncols) + " matrix");
    }
    ++count[e.row];
  }

  // Bucket by row, then sort and merge each row.
  std::vector<Index> start(nrows + 1, 0);
  for (Index r = 0; r < nrows; ++r) start[r + 1] = start[r] + count[r];
  std::vector<std::pair<Index, double>> bucket(entries.size());
  std::vector<Index> fill(start.begin(), start.end() - 1);
  for (const auto& e : entries) bucket[fill[e.row]++] = {e.col, e.value};

  A.columns_.reserve(entries.size());
  A.values_.reserve(entries.size());
  for (Index r = 0; r < nrows; ++r) {
    auto first = bucket.begin() + static_cast<std::ptrdiff_t>(start[r]);
    auto last = bucket.begin() + static_cast<std::ptrdiff_t>(start[r + 1]);
    std::sort(first, last,
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (!A.columns_.empty() && A.columns_.size() > A.offsets_[r] &&
          A.columns_.back() == it->first) {
        A.values_.back() += it->second;
      } else {
        A.columns_.push_back(it->first);
        A.values_.push_back(it->second);
      }
    }
    A.offsets_[r + 1] = A.columns_.size();
  }
  return A;
}

SparseMatrix SparseMatrix::identity(Index n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (Index i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, t);
}

double SparseMatrix::at(Index r, Index c) const {
  auto first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[r]);
  auto last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[r + 1]);
  auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values_[static_cast<Index>(it - columns_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x,
                            std::span<double> y) const {
  if (x.size() != ncols_ || y.size() != nrows_) {
    throw InvalidArgument("matrix-vector size mismatch");
  }
  for (Index r = 0; r < nrows_; ++r) {
    double sum = 0.0;
    for (Index p = offsets_[r]; p < offsets_[r + 1]; ++p) {
      sum += values_[p] * x[columns_[p]];
    }
    y[r] = sum;
  }
}

Eigen::VectorXd SparseMatrix::operator*(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(static_cast<Eigen::Index>(nrows_));
  multiply({x.data(), static_cast<Index>(x.size())},
           {y.data(), static_cast<Index>(y.size())});
  return y;
}

double SparseMatrix::bilinear(const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y) const {
  return x.dot(*this * y);
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (Index r = 0; r < nrows_; ++r) {
    for (Index p = offsets_[r]; p < offsets_[r + 1]; ++p) {
      t.push_back({columns_[p], r, values_[p]});
    }
  }
  return from_triplets(ncols_, nrows_, t);
}

Eigen::VectorXd SparseMatrix::diagonal() const {
  const Index n = std::min(nrows_, ncols_);
  Eigen::VectorXd d(static_cast<Eigen::Index>(n));
  for (Index i = 0; i < n; ++i) d[static_cast<Eigen::Index>(i)] = at(i, i);
  return d;
}

Eigen::MatrixXd SparseMatrix::to_dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nrows_),
                                            static_cast<Eigen::Index>(ncols_));
  for (Index r = 0; r < nrows_; ++r) {
    for (Index p = offsets_[r]; p < offsets_[r + 1]; ++p) {
      D(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(columns_[p])) +=
          values_[p];
    }
  }
  return D;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SparseMatrix linear_combination(std::initializer_list<ScaledMatrix> terms) {
  if (terms.size() == 0) throw InvalidArgument("empty linear combination");
  const Index nrows = terms.begin()->matrix->rows();
  const Index ncols = terms.begin()->matrix->cols();
  Index nnz = 0;
  for (const auto& t : terms) {
    if (t.matrix->rows() != nrows || t.matrix->cols() != ncols) {
      throw InvalidArgument("linear combination of mismatched shapes");
    }
    nnz += t.matrix->nonzeros();
  }
  std::vector<Triplet> triplets;
  triplets.reserve(nnz);
  for (const auto& t : terms) {
    if (t.coefficient == 0.0) continue;
    const auto off = t.matrix->offsets();
    const auto cols = t.matrix->column_indices();
    const auto vals = t.matrix->values();
    for (Index r = 0; r < nrows; ++r) {
      for (Index p = off[r]; p < off[r + 1]; ++p) {
        triplets.push_back({r, cols[p], t.coefficient * vals[p]});
      }
    }
  }
  return SparseMatrix::from_triplets(nrows, ncols, triplets);
}

SolveResult solve(const SparseMatrix& A, const Eigen::VectorXd& b,
                  const SolverOptions& options) {
  using Eigen::VectorXd;
  if (A.rows() != A.cols()) throw InvalidArgument("solve: matrix not square");
  if (static_cast<Index>(b.size()) != A.rows()) {
    throw InvalidArgument("solve: right-hand side length mismatch");
  }
  const auto n = static_cast<Eigen::Index>(A.rows());
  SolveResult result{VectorXd::Zero(n), {}};
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    result.report.converged = true;
    return result;
  }

  const Index max_it =
      options.max_iterations ? options.max_iterations : 10 * A.rows();
  const auto m = static_cast<Eigen::Index>(
      std::max<Index>(1, std::min<Index>(options.restart, A.rows())));

  VectorXd inv_diag = A.diagonal();
  for (Eigen::Index i = 0; i < n; ++i) {
    inv_diag[i] = inv_diag[i] != 0.0 ? 1.0 / inv_diag[i] : 1.0;
  }

  VectorXd& x = result.x;
  VectorXd r = b;
  double rel = 1.0;
  Index it = 0;

  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
  VectorXd cs(m), sn(m), g(m + 1);

  while (it < max_it) {
    const double beta = r.norm();
    V.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    H.setZero();

    Eigen::Index j = 0;
    for (; j < m && it < max_it; ++j) {
      VectorXd w = A * inv_diag.cwiseProduct(V.col(j));
      for (Eigen::Index i = 0; i <= j; ++i) {
        H(i, j) = w.dot(V.col(i));
        w -= H(i, j) * V.col(i);
      }
      H(j + 1, j) = w.norm();
      const bool breakdown = H(j + 1, j) <= 1e-300;
      if (!breakdown) V.col(j + 1) = w / H(j + 1, j);

      for (Eigen::Index i = 0; i < j; ++i) {
        const double tmp = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = tmp;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      cs[j] = H(j, j) / denom;
      sn[j] = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      ++it;

      if (breakdown || std::abs(g[j + 1]) <= options.tolerance * bnorm) {
        ++j;
        break;
      }
    }

    VectorXd y = H.topLeftCorner(j, j)
                     .triangularView<Eigen::Upper>()
                     .solve(g.head(j));
    x += inv_diag.cwiseProduct(V.leftCols(j) * y);

    r = b - A * x;
    rel = r.norm() / bnorm;
    if (rel <= options.tolerance) {
      result.report.converged = true;
      break;
    }
  }
  result.report.iterations = it;
  result.report.relative_residual = rel;
  return result;
}

Eigen::VectorXd dense_solve(const SparseMatrix& A, const Eigen::VectorXd& b) {
  if (A.rows() != A.cols()) {
    throw InvalidArgument("dense_solve: matrix not square");
  }
  if (A.rows() > kDenseSolveLimit) {
    throw InvalidArgument("dense_solve: n = " + std::to_string(A.rows()) +
                          " exceeds the dense limit");
  }
  return A.to_dense().partialPivLu().solve(b);
}

}  // namespace tangent_llg
