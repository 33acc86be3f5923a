#include <gtest/gtest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "fourmode/linalg.hpp"

using namespace fourmode;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = nd(rng);
  return a;
}

}  // namespace

TEST(Jacobi, MatchesEigenSelfAdjointSolver) {
  std::mt19937_64 rng(7);
  for (int n : {2, 5, 8, 16}) {
    const Eigen::MatrixXd a = random_symmetric(n, rng);
    const auto ours = linalg::jacobi_eigen<double>(a, true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    for (int k = 0; k < n; ++k) EXPECT_NEAR(ours.values(k), ref.eigenvalues()(k), 1e-12);
    const Eigen::MatrixXd recon = ours.vectors * ours.values.asDiagonal() * ours.vectors.transpose();
    EXPECT_LT((recon - a).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Jacobi, DiagonalInputNeedsNoSweeps) {
  Eigen::MatrixXd d = Eigen::Vector3d(3.0, -1.0, 2.0).asDiagonal();
  const auto e = linalg::jacobi_eigen<double>(d, false);
  EXPECT_EQ(e.sweeps, 0);
  EXPECT_DOUBLE_EQ(e.values(0), -1.0);
  EXPECT_DOUBLE_EQ(e.values(2), 3.0);
}

TEST(Jacobi, GradedMatrixKeepsSmallEigenvalueRelativeAccuracy) {
  // Scaled diagonally dominant: small eigenvalue equals det / large eigenvalue.
  const long double lo = 1e-8L, hi = 1e8L, off = 0.1L;
  linalg::DenseMatrix<long double> a(2, 2);
  a << lo, off, off, hi;
  const auto e = linalg::jacobi_eigen<long double>(a, false);
  const long double big = 0.5L * (lo + hi) + std::sqrt(0.25L * (hi - lo) * (hi - lo) + off * off);
  const long double small = (lo * hi - off * off) / big;
  EXPECT_NEAR(static_cast<double>(e.values(0) / small), 1.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(e.values(1) / big), 1.0, 1e-15);
}

TEST(Jacobi, RejectsNonSquare) {
  EXPECT_THROW(linalg::jacobi_eigen<double>(Eigen::MatrixXd::Zero(2, 3), false), Error);
}

TEST(HermitianEigenvalues, MatchesEigenOnRandomHermitian) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Matrix8c h;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j <= i; ++j) {
      h(i, j) = i == j ? Complex(nd(rng), 0.0) : Complex(nd(rng), nd(rng));
      h(j, i) = std::conj(h(i, j));
    }
  const auto ours = linalg::hermitian_eigenvalues(h);
  Eigen::SelfAdjointEigenSolver<Matrix8c> ref(h);
  ASSERT_EQ(ours.size(), 8u);
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(ours[static_cast<std::size_t>(k)], ref.eigenvalues()(k), 1e-12);
}

TEST(CollapseDoubled, PairsAndRejectsUnpaired) {
  linalg::DenseVector<double> v(4);
  v << 1.0, 1.0, 2.0, 2.0;
  const auto c = linalg::collapse_doubled<double>(v, 1e-12);
  EXPECT_EQ(c, (std::vector<double>{1.0, 2.0}));
  v << 1.0, 1.5, 2.0, 2.0;
  EXPECT_THROW(linalg::collapse_doubled<double>(v, 1e-12), Error);
}

TEST(Expm, ZeroGivesIdentity) {
  EXPECT_EQ(linalg::expm(Matrix4c(Matrix4c::Zero())), Matrix4c(Matrix4c::Identity()));
}

TEST(Expm, MatchesEigenMatrixFunctions) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (double scale : {0.1, 1.0, 3.0, 8.0}) {
    Matrix4c a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = scale * Complex(nd(rng), nd(rng)) / 2.0;
    const Matrix4c ours = linalg::expm(a);
    const Matrix4c ref = a.exp();
    const double rel = (ours - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff();
    EXPECT_LT(rel, 1e-12) << "scale " << scale;
  }
}

TEST(Expm, DiagonalExponentials) {
  Eigen::Matrix2d a;
  a << -1.0, 0.0, 0.0, 2.5;
  const Eigen::Matrix2d e = linalg::expm(a);
  EXPECT_NEAR(e(0, 0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(e(1, 1), std::exp(2.5), 1e-13);
  EXPECT_EQ(e(0, 1), 0.0);
}
