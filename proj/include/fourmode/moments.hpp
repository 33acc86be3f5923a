#pragma once

// Covariance-matrix representations of a GaussianState.
//
//   NormalCovariance:    8x8 Hermitian A over (beta1, beta1*, ..., beta4, beta4*),
//                        C_N(beta) = exp(beta^dag A beta / 2).
//   SymmetricCovariance: real symmetric sigma over (x1, p1, ...) of the present
//                        modes, vacuum variance 1/2, x = (a + a^dag)/sqrt(2).

#include <algorithm>
#include <cmath>
#include <string>

#include "fourmode/error.hpp"
#include "fourmode/evolution.hpp"
#include "fourmode/linalg.hpp"
#include "fourmode/state.hpp"
#include "fourmode/symplectic.hpp"

namespace fourmode {

struct NormalCovariance {
  Matrix8c m = Matrix8c::Zero();
};

struct SymmetricCovariance {
  ModeSet modes = ModeSet::all();
  Eigen::MatrixXd m;

  /// Row/column offset of `mode` inside m.
  Eigen::Index offset(int mode) const {
    Eigen::Index k = 0;
    for (int m_ : modes.modes()) {
      if (m_ == mode) return 2 * k;
      ++k;
    }
    throw Error(ErrorKind::invalid_side, "mode " + std::to_string(mode) + " not present");
  }
};

/// Allowed dip of the smallest symplectic eigenvalue below 1/2, per photon of
/// total population (rounding in sigma grows with the populations).
inline constexpr double kPhysicalityTol = 1e-9;

inline double physicality_tolerance(const GaussianState& st) {
  return kPhysicalityTol * std::max(1.0, st.B[0] + st.B[1] + st.B[2] + st.B[3]);
}

inline GaussianState extract_correlators(const SecondMoments& sm) {
  const Matrix4c& s = sm.s;
  GaussianState st;
  st.B = {s(0, 0).real(), s(1, 1).real() - 1.0, s(2, 2).real(), s(3, 3).real() - 1.0};
  for (std::size_t j = 0; j < 4; ++j) {
    const double scale = std::max(1.0, std::abs(s(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j))));
    if (st.B[j] < -1e-12 * scale) throw Error(ErrorKind::nonphysical_moments, "negative mean photon number");
    st.B[j] = std::max(st.B[j], 0.0);
  }
  st.d12 = s(1, 0);
  st.d14 = s(3, 0);
  st.d23 = s(1, 2);
  st.d34 = s(3, 2);
  st.dbar13 = -s(0, 2);
  st.dbar24 = -s(3, 1);
  return st;
}

inline NormalCovariance build_normal_covariance(const GaussianState& st) {
  NormalCovariance a;
  for (int j = 1; j <= kModes; ++j) {
    const Eigen::Index r = 2 * (j - 1);
    a.m(r, r) = -st.b(j);
    a.m(r + 1, r + 1) = -st.b(j);
    for (int k = j + 1; k <= kModes; ++k) {
      const Eigen::Index c = 2 * (k - 1);
      const Complex d = st.pair(j, k);
      const Complex dbar = st.transfer(j, k);
      Eigen::Matrix<Complex, 2, 2> blk;
      blk << std::conj(dbar), d, std::conj(d), dbar;
      a.m.block<2, 2>(r, c) = blk;
      a.m.block<2, 2>(c, r) = blk.adjoint();
    }
  }
  return a;
}

/// sigma over the modes in `present` (all four by default). With
/// `check_physical`, throws nonphysical-state if a symplectic eigenvalue falls
/// below 1/2 - physicality_tolerance(st).
inline SymmetricCovariance build_symmetric_covariance(const GaussianState& st,
                                                      ModeSet present = ModeSet::all(),
                                                      bool check_physical = true) {
  if (present.empty()) throw Error(ErrorKind::empty_subset, "no modes selected");
  const std::vector<int> modes = present.modes();
  const auto n = static_cast<Eigen::Index>(modes.size());
  SymmetricCovariance sig{present, Eigen::MatrixXd::Zero(2 * n, 2 * n)};
  for (Eigen::Index a = 0; a < n; ++a) {
    const int j = modes[static_cast<std::size_t>(a)];
    sig.m(2 * a, 2 * a) = st.b(j) + 0.5;
    sig.m(2 * a + 1, 2 * a + 1) = st.b(j) + 0.5;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const int k = modes[static_cast<std::size_t>(b)];
      const Complex d = st.pair(j, k);
      const Complex dbar = st.transfer(j, k);
      Eigen::Matrix2d eps;
      eps << (d - dbar).real(), (d - dbar).imag(), (d + dbar).imag(), -(d + dbar).real();
      sig.m.block<2, 2>(2 * a, 2 * b) = eps;
      sig.m.block<2, 2>(2 * b, 2 * a) = eps.transpose();
    }
  }
  if (check_physical) {
    const auto nu = symplectic_eigenvalues(sig.m);
    if (nu.front() < 0.5 - physicality_tolerance(st))
      throw Error(ErrorKind::nonphysical_state,
                  "symplectic eigenvalue " + std::to_string(nu.front()) + " below 1/2");
  }
  return sig;
}

struct ReducedState {
  GaussianState state;  // absent modes zeroed
  SymmetricCovariance sigma;
};

inline ReducedState reduce_modes(const GaussianState& st, ModeSet keep) {
  if (keep.empty()) throw Error(ErrorKind::empty_subset, "reduce_modes needs at least one mode");
  GaussianState r;
  for (int j = 1; j <= kModes; ++j)
    if (keep.contains(j)) r.B[static_cast<std::size_t>(j - 1)] = st.b(j);
  auto both = [&](int i, int j) { return keep.contains(i) && keep.contains(j); };
  if (both(1, 2)) r.d12 = st.d12;
  if (both(1, 4)) r.d14 = st.d14;
  if (both(2, 3)) r.d23 = st.d23;
  if (both(3, 4)) r.d34 = st.d34;
  if (both(1, 3)) r.dbar13 = st.dbar13;
  if (both(2, 4)) r.dbar24 = st.dbar24;
  return ReducedState{r, build_symmetric_covariance(r, keep, false)};
}

}  // namespace fourmode
