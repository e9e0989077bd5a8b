#include "tangent_llg/linalg.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <random>

using namespace tangent_llg;

namespace {

SparseMatrix random_sparse(Index n, double shift, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) {
    t.push_back({i, i, shift});
    for (int j = 0; j < 4; ++j) {
      t.push_back({i, static_cast<Index>(rng() % n), u(rng)});
    }
  }
  return SparseMatrix::from_triplets(n, n, t);
}

}  // namespace

TEST_CASE("triplets with repeated positions are summed") {
  const std::vector<Triplet> t{{0, 1, 2.0}, {0, 1, 3.0}, {1, 0, -1.0}};
  const SparseMatrix A = SparseMatrix::from_triplets(2, 2, t);
  CHECK(A.at(0, 1) == 5.0);
  CHECK(A.at(1, 0) == -1.0);
  CHECK(A.at(0, 0) == 0.0);
  CHECK(A.nonzeros() == 2);
  CHECK(A.transpose().at(1, 0) == 5.0);
}

TEST_CASE("out-of-range triplet is rejected") {
  const std::vector<Triplet> t{{2, 0, 1.0}};
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, t), InvalidArgument);
}

TEST_CASE("sparse products agree with dense arithmetic") {
  const SparseMatrix A = random_sparse(30, 3.0, 1);
  const Eigen::MatrixXd D = A.to_dense();
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(30, -1.0, 2.0);
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(30, 0.5, -0.5);
  CHECK((A * x - D * x).norm() <= 1e-13);
  CHECK(A.bilinear(x, y) == doctest::Approx(x.dot(D * y)).epsilon(1e-13));
  CHECK((A.diagonal() - D.diagonal()).norm() == 0.0);
  CHECK((A.transpose().to_dense() - D.transpose()).norm() == 0.0);

  const SparseMatrix I = SparseMatrix::identity(30);
  const SparseMatrix B = linear_combination({{2.0, &A}, {-0.5, &I}});
  const Eigen::MatrixXd expected =
      2.0 * D - 0.5 * Eigen::MatrixXd::Identity(30, 30);
  CHECK((B.to_dense() - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("iterative solve matches a dense LU oracle") {
  for (unsigned seed : {2u, 3u, 4u}) {
    const Index n = 120;
    const SparseMatrix A = random_sparse(n, 4.0, seed);
    std::mt19937 rng(seed + 10);
    std::normal_distribution<double> g;
    Eigen::VectorXd b(n);
    for (auto& v : b) v = g(rng);
    const SolveResult r = solve(A, b, {1e-12, 0, 60});
    REQUIRE(r.report.converged);
    const Eigen::VectorXd oracle = A.to_dense().partialPivLu().solve(b);
    CHECK((r.x - oracle).norm() <= 1e-9 * oracle.norm());
    CHECK((A * r.x - b).norm() <= 1e-12 * b.norm() * 1.0001);
  }
}

TEST_CASE("restarts do not break convergence") {
  const SparseMatrix A = random_sparse(150, 4.0, 9);
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(150);
  const SolveResult r = solve(A, b, {1e-11, 0, 5});
  CHECK(r.report.converged);
  CHECK(r.report.relative_residual <= 1e-11);
}

TEST_CASE("zero right-hand side gives the zero solution") {
  const SparseMatrix A = random_sparse(10, 4.0, 5);
  const SolveResult r = solve(A, Eigen::VectorXd::Zero(10));
  CHECK(r.report.converged);
  CHECK(r.x.norm() == 0.0);
}

TEST_CASE("dense solve respects its size limit") {
  const SparseMatrix A = random_sparse(20, 4.0, 6);
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(20);
  CHECK((A * dense_solve(A, b) - b).norm() <= 1e-12);
  const SparseMatrix big = SparseMatrix::identity(kDenseSolveLimit + 1);
  CHECK_THROWS_AS(dense_solve(big, Eigen::VectorXd::Ones(kDenseSolveLimit + 1)),
                  InvalidArgument);
}
