#pragma once

// Small dense linear algebra used throughout: a cyclic Jacobi eigensolver for
// real symmetric matrices (any floating scalar, so the ill-conditioned
// symplectic spectra can run in extended precision), Hermitian eigenvalues by
// realification, and a scaling-and-squaring matrix exponential.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "fourmode/error.hpp"

namespace fourmode {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

namespace linalg {

template <typename Real>
using DenseMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using DenseVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
struct SymmetricEigen {
  DenseVector<Real> values;   // ascending
  DenseMatrix<Real> vectors;  // columns, empty unless requested
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
///
/// A rotation is skipped once |a_pq| <= tol * sqrt(|a_pp a_qq|) or the element
/// is negligible against the Frobenius norm; iteration stops after a sweep
/// with no rotations. The relative criterion keeps small eigenvalues of graded
/// matrices accurate. Throws numerical-failure if it has not converged after
/// `max_sweeps`.
template <typename Real>
SymmetricEigen<Real> jacobi_eigen(DenseMatrix<Real> a, bool want_vectors,
                                  Real tol = std::numeric_limits<Real>::epsilon(),
                                  int max_sweeps = 100) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::numerical_failure, "jacobi_eigen: matrix not square");

  SymmetricEigen<Real> out;
  DenseMatrix<Real> v;
  if (want_vectors) v = DenseMatrix<Real>::Identity(n, n);

  const Real frob = a.norm();
  const Real negligible = std::numeric_limits<Real>::epsilon() * frob * Real(1e-3);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real apq = a(p, q);
        if (apq == Real(0)) continue;
        if (abs(apq) <= tol * sqrt(abs(a(p, p) * a(q, q))) || abs(apq) <= negligible) {
          a(p, q) = a(q, p) = Real(0);
          continue;
        }
        rotated = true;
        const Real theta = (a(q, q) - a(p, p)) / (Real(2) * apq);
        const Real t = (theta >= Real(0) ? Real(1) : Real(-1)) /
                       (abs(theta) + sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / sqrt(t * t + Real(1));
        const Real s = t * c;

        const Real app = a(p, p);
        const Real aqq = a(q, q);
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Real akp = a(k, p);
          const Real akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = Real(0);

        if (want_vectors) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const Real vkp = v(k, p);
            const Real vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == max_sweeps) throw Error(ErrorKind::numerical_failure, "jacobi_eigen did not converge");
  out.sweeps = sweep;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.values(i) = a(src, src);
    if (want_vectors) out.vectors.col(i) = v.col(src);
  }
  return out;
}

/// Real 2n x 2n embedding [[Re, -Im], [Im, Re]] of a complex n x n matrix.
/// Each eigenvalue of a Hermitian input appears twice in the embedding.
template <typename Real, typename Derived>
DenseMatrix<Real> realify(const Eigen::MatrixBase<Derived>& h) {
  const Eigen::Index n = h.rows();
  DenseMatrix<Real> r(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Real re = static_cast<Real>(std::real(h(i, j)));
      const Real im = static_cast<Real>(std::imag(h(i, j)));
      r(i, j) = re;
      r(i + n, j + n) = re;
      r(i, j + n) = -im;
      r(i + n, j) = im;
    }
  }
  return r;
}

/// Collapses a sorted spectrum in which every value occurs twice. Adjacent
/// partners must agree to `rel_tol` (relative to the spectral radius).
template <typename Real>
std::vector<Real> collapse_doubled(const DenseVector<Real>& sorted, Real rel_tol) {
  using std::abs;
  const Eigen::Index n = sorted.size();
  if (n % 2 != 0) throw Error(ErrorKind::numerical_failure, "odd-sized doubled spectrum");
  Real radius = Real(0);
  for (Eigen::Index i = 0; i < n; ++i) radius = std::max(radius, abs(sorted(i)));
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(n / 2));
  for (Eigen::Index i = 0; i < n; i += 2) {
    const Real lo = sorted(i);
    const Real hi = sorted(i + 1);
    if (abs(hi - lo) > rel_tol * std::max(radius, Real(1)))
      throw Error(ErrorKind::numerical_failure, "eigenvalue multiplicity pairing failed");
    out.push_back((lo + hi) / Real(2));
  }
  return out;
}

/// Eigenvalues (ascending) of a Hermitian matrix via Jacobi on its realification.
template <typename Derived>
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& h, double tol = 1e-15) {
  auto eig = jacobi_eigen<double>(realify<double>(h), false, tol);
  return collapse_doubled<double>(eig.values, 1e-8);
}

/// Matrix exponential by scaling and squaring with a degree-18 Taylor
/// polynomial; the scaled matrix has 1-norm <= 1/2, so the truncation error is
/// below 1e-22 relative before squaring.
template <typename Scalar, int N>
Eigen::Matrix<Scalar, N, N> expm(const Eigen::Matrix<Scalar, N, N>& a) {
  using Mat = Eigen::Matrix<Scalar, N, N>;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  constexpr int kOrder = 18;

  const Real norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > Real(0.5)) {
    squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm1) / 0.5)));
  }
  const Mat scaled = a * Scalar(std::ldexp(Real(1), -squarings));

  // Horner: I + X(I + X/2 (I + X/3 (...)))
  Mat result = Mat::Identity(a.rows(), a.cols());
  for (int k = kOrder; k >= 1; --k) {
    result = Mat::Identity(a.rows(), a.cols()) + (scaled * result) * Scalar(Real(1) / Real(k));
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace linalg
}  // namespace fourmode
