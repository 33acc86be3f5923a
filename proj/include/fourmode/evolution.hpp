#pragma once

// Propagator M with v(s) = M v(0), and the second moments of v including
// damping and reservoir noise.

#include <algorithm>
#include <cmath>
#include <complex>

#include "fourmode/error.hpp"
#include "fourmode/linalg.hpp"
#include "fourmode/model.hpp"
#include "fourmode/state.hpp"

namespace fourmode {

struct Propagator {
  Matrix4c m = Matrix4c::Identity();
};

/// S_kl = <v_k v_l^dag> over v = (a1^dag, a2, a3^dag, a4).
struct SecondMoments {
  Matrix4c s = Matrix4c::Zero();
};

inline SecondMoments vacuum_moments() {
  SecondMoments out;
  out.s(1, 1) = 1.0;
  out.s(3, 3) = 1.0;
  return out;
}

/// exp(U) for the drift matrix, evaluated in extended precision.
inline Propagator numeric_propagator(const SystemConfig& cfg) {
  validate(cfg);
  const auto u = detail::drift_entries<long double>(cfg);
  return Propagator{linalg::expm(u).cast<Complex>()};
}

namespace detail {

/// Relative size below which the closed form's denominators are treated as
/// degenerate and the exponential route is used instead.
inline constexpr double kDegenerateRelTol = 1e-6;

}  // namespace detail

/// Closed-form noiseless propagator. Square roots of negative arguments are
/// principal complex roots, so trigonometric entries become hyperbolic where
/// needed. Configurations on or near the removable singularities (a zero
/// coupling, b -> 0) fall back to numeric_propagator.
inline Propagator analytic_propagator(const SystemConfig& cfg) {
  validate(cfg);
  if (!cfg.noiseless())
    throw Error(ErrorKind::unsupported_config, "analytic propagator requires gamma_t = 0");

  using R = long double;
  using C = std::complex<R>;
  const R g1 = cfg.g1t, g2 = cfg.g2t, g3 = cfg.g3t;
  const R gmax = std::max({g1, g2, g3});
  if (gmax == R(0)) return Propagator{};

  const R g1s = g1 * g1, g2s = g2 * g2, g3s = g3 * g3;
  const R a = -g1s + g2s - g3s;
  const R a1 = -g1s + g2s + g3s;
  const R disc = g1s * g1s - 2 * g1s * g2s - 2 * g1s * g3s + g2s * g2s - 2 * g2s * g3s + g3s * g3s;
  const C b = std::sqrt(C(disc, 0));

  const R rel = static_cast<R>(detail::kDegenerateRelTol);
  if (std::min({g1, g2, g3}) < rel * gmax || std::abs(b) < rel * gmax * gmax) {
    return numeric_propagator(cfg);
  }

  const C x = (a + b) / R(2);
  const C y = (a - b) / R(2);
  const C x1 = (a1 + b) / R(2);
  const C y1 = (a1 - b) / R(2);
  const C rx1 = std::sqrt(x1);
  const C ry1 = std::sqrt(y1);
  const C c1 = std::cos(rx1), c2 = std::cos(ry1);
  const C s1 = std::sin(rx1), s2 = std::sin(ry1);
  const C i(0, 1);
  const C xy = x - y;
  const C den = x * y1 - x1 * y;

  Eigen::Matrix<C, 4, 4> m;
  m(0, 0) = (x * c1 - y * c2) / xy;
  m(0, 1) = i * x * y * (ry1 * s2 - rx1 * s1) / (den * g1);
  m(0, 2) = i * (y * ry1 * x1 * s2 - x * rx1 * y1 * s1) / (g2 * den);
  m(0, 3) = x * y * (c2 - c1) / (g1 * g3 * xy);

  // Printed with the opposite overall sign; this sign is the one exp(U) gives.
  m(1, 0) = i * g1 * (rx1 * s1 - ry1 * s2) / xy;
  m(1, 1) = (x * y1 * c2 - x1 * y * c1) / den;
  m(1, 2) = g1 * y1 * x1 * (c2 - c1) / (g2 * den);
  m(1, 3) = i * (ry1 * x * s2 - rx1 * y * s1) / (xy * g3);

  m(2, 0) = i * g2 * (rx1 * y * s2 - ry1 * x * s1) / (rx1 * xy * ry1);
  m(2, 1) = -g2 * x * y * (c2 - c1) / (den * g1);
  m(2, 2) = (x * y1 * c1 - x1 * y * c2) / den;
  m(2, 3) = -i * g2 * x * y * (rx1 * s2 - ry1 * s1) / (g1 * g3 * xy * rx1 * ry1);

  m(3, 0) = g1 * g3 * (c1 - c2) / xy;
  m(3, 1) = i * g3 * (ry1 * x * s2 - rx1 * y * s1) / den;
  m(3, 2) = i * g1 * g3 * (x1 * ry1 * s2 - y1 * rx1 * s1) / (g2 * den);
  m(3, 3) = (x * c2 - y * c1) / xy;

  return Propagator{m.cast<Complex>()};
}

/// Integrates dS/ds = U S + S U^dag + Q from the vacuum with fixed-step RK4.
/// Q = diag(g1 n1, g2 (n2 + 1), g3 n3, g4 (n4 + 1)) with g_j = gamma_j t.
inline SecondMoments evolve_second_moments(const SystemConfig& cfg) {
  validate(cfg);
  const Matrix4c u = detail::drift_entries<double>(cfg);
  const Matrix4c ud = u.adjoint();
  Matrix4c q = Matrix4c::Zero();
  q(0, 0) = cfg.gamma_t[0] * cfg.n_d[0];
  q(1, 1) = cfg.gamma_t[1] * (cfg.n_d[1] + 1.0);
  q(2, 2) = cfg.gamma_t[2] * cfg.n_d[2];
  q(3, 3) = cfg.gamma_t[3] * (cfg.n_d[3] + 1.0);

  auto rhs = [&](const Matrix4c& s) -> Matrix4c { return u * s + s * ud + q; };

  Matrix4c s = vacuum_moments().s;
  const double h = 1.0 / cfg.steps;
  for (int step = 0; step < cfg.steps; ++step) {
    const Matrix4c k1 = rhs(s);
    const Matrix4c k2 = rhs(s + (0.5 * h) * k1);
    const Matrix4c k3 = rhs(s + (0.5 * h) * k2);
    const Matrix4c k4 = rhs(s + h * k3);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s = 0.5 * (s + s.adjoint()).eval();
  }
  return SecondMoments{s};
}

/// Correlators of the noiseless state evolved from vacuum, read directly off M.
inline GaussianState noiseless_state_from_propagator(const Propagator& p) {
  const Matrix4c& m = p.m;
  auto sq = [](const Complex& z) { return std::norm(z); };
  GaussianState st;
  st.B[0] = sq(m(0, 1)) + sq(m(0, 3));
  st.B[1] = sq(m(1, 0)) + sq(m(1, 2));
  st.B[2] = sq(m(2, 1)) + sq(m(2, 3));
  st.B[3] = sq(m(3, 0)) + sq(m(3, 2));
  st.d12 = std::conj(m(0, 0)) * m(1, 0) + std::conj(m(0, 2)) * m(1, 2);
  st.d14 = std::conj(m(0, 0)) * m(3, 0) + std::conj(m(0, 2)) * m(3, 2);
  st.d23 = std::conj(m(2, 1)) * m(1, 1) + std::conj(m(2, 3)) * m(1, 3);
  st.d34 = std::conj(m(2, 0)) * m(3, 0) + std::conj(m(2, 2)) * m(3, 2);
  // Dbar_jk = -<a_j^dag a_k>.
  st.dbar13 = -(m(0, 0) * std::conj(m(2, 0)) + m(0, 2) * std::conj(m(2, 2)));
  st.dbar24 = -(m(3, 1) * std::conj(m(1, 1)) + m(3, 3) * std::conj(m(1, 3)));
  return st;
}

/// n1 + n3 - n2 - n4, the photon-number combination the Hamiltonian conserves.
inline double conserved_photon_difference(const GaussianState& st) {
  return st.B[0] + st.B[2] - st.B[1] - st.B[3];
}

/// max |M K M^dag - K|.
inline double pseudo_unitarity_defect(const Propagator& p) {
  const Matrix4c k = commutator_metric();
  return (p.m * k * p.m.adjoint() - k).cwiseAbs().maxCoeff();
}

}  // namespace fourmode
