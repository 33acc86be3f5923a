#pragma once

#include <cmath>
#include <vector>

#include "fourmode/error.hpp"
#include "fourmode/linalg.hpp"

namespace fourmode {

/// Direct sum of per-mode [[0, 1], [-1, 0]] blocks.
inline Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    om(2 * k, 2 * k + 1) = 1.0;
    om(2 * k + 1, 2 * k) = -1.0;
  }
  return om;
}

/// Symplectic eigenvalues (ascending) of a positive-definite covariance matrix
/// in (x1, p1, x2, p2, ...) ordering.
///
/// -(Omega sigma)^2 is similar to -C^2 with C = sigma^{1/2} Omega sigma^{1/2}.
/// Rather than squaring, the eigenvalues +-nu of the Hermitian matrix i C are
/// taken directly, which keeps strongly squeezed spectra (nu ~ 1e-6 next to
/// nu ~ 1e5) accurate. Everything runs in long double.
inline std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
  using R = long double;
  using M = linalg::DenseMatrix<R>;
  const Eigen::Index dim = sigma.rows();
  if (dim == 0 || dim % 2 != 0 || sigma.cols() != dim)
    throw Error(ErrorKind::numerical_failure, "covariance matrix must be 2n x 2n");
  const Eigen::Index n = dim / 2;

  const M s = sigma.cast<R>();
  const auto eig = linalg::jacobi_eigen<R>(s, true);
  if (eig.values(0) <= R(0))
    throw Error(ErrorKind::numerical_failure, "covariance matrix is not positive definite");

  const M root = eig.vectors * eig.values.cwiseSqrt().asDiagonal() * eig.vectors.transpose();
  const M c = root * symplectic_form(static_cast<int>(n)).cast<R>() * root;

  M h = M::Zero(2 * dim, 2 * dim);
  h.topRightCorner(dim, dim) = -c;
  h.bottomLeftCorner(dim, dim) = c;
  const auto spec = linalg::jacobi_eigen<R>(h, false);

  // Spectrum is {+-nu_k}, each four times after realification; keep the
  // positive half and pair it up.
  const linalg::DenseVector<R> positive = spec.values.tail(dim);
  const auto nus = linalg::collapse_doubled<R>(positive, R(1e-8));
  std::vector<double> out;
  out.reserve(nus.size());
  for (R v : nus) out.push_back(static_cast<double>(v));
  return out;
}

}  // namespace fourmode
