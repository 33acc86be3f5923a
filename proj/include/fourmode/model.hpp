#pragma once

// Simulation inputs and the drift matrix of the linear Heisenberg-Langevin
// system over the operator basis v = (a1^dag, a2, a3^dag, a4).
//
// All rates are dimensionless products with the interaction time t, and the
// dynamics runs over normalized time s in [0, 1].

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "fourmode/error.hpp"
#include "fourmode/linalg.hpp"

namespace fourmode {

struct SystemConfig {
  double g1t = 0.0;  // down-conversion 1-2
  double g2t = 0.0;  // up-conversion 1->3
  double g3t = 0.0;  // up-conversion 2->4
  std::array<double, 4> gamma_t{};
  std::array<double, 4> n_d{};
  int steps = 2000;

  bool noiseless() const {
    for (double g : gamma_t)
      if (g != 0.0) return false;
    return true;
  }

  /// Symmetric up-conversion g2t = g3t.
  static SystemConfig symmetric(double g1t, double g23t) {
    SystemConfig cfg;
    cfg.g1t = g1t;
    cfg.g2t = g23t;
    cfg.g3t = g23t;
    return cfg;
  }
};

inline void validate(const SystemConfig& cfg) {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorKind::invalid_config, std::string(name) + " must be finite and >= 0");
  };
  check(cfg.g1t, "g1t");
  check(cfg.g2t, "g2t");
  check(cfg.g3t, "g3t");
  for (double g : cfg.gamma_t) check(g, "gamma_t");
  for (double n : cfg.n_d) check(n, "n_d");
  if (cfg.steps < 1) throw Error(ErrorKind::invalid_config, "steps must be >= 1");
}

/// Drift matrix U: diagonal -gamma_j t / 2, couplings +-i g_k t.
struct DriftMatrix {
  Matrix4c m = Matrix4c::Zero();
};

namespace detail {

template <typename Real>
Eigen::Matrix<std::complex<Real>, 4, 4> drift_entries(const SystemConfig& cfg) {
  using C = std::complex<Real>;
  const Real g1 = static_cast<Real>(cfg.g1t);
  const Real g2 = static_cast<Real>(cfg.g2t);
  const Real g3 = static_cast<Real>(cfg.g3t);
  Eigen::Matrix<C, 4, 4> u = Eigen::Matrix<C, 4, 4>::Zero();
  for (int j = 0; j < 4; ++j) u(j, j) = C(-static_cast<Real>(cfg.gamma_t[j]) / Real(2), 0);
  u(0, 1) = C(0, -g1);
  u(0, 2) = C(0, -g2);
  u(1, 0) = C(0, g1);
  u(1, 3) = C(0, g3);
  u(2, 0) = C(0, -g2);
  u(3, 1) = C(0, g3);
  return u;
}

}  // namespace detail

inline DriftMatrix build_drift_matrix(const SystemConfig& cfg) {
  validate(cfg);
  return DriftMatrix{detail::drift_entries<double>(cfg)};
}

/// K = diag(-1, +1, -1, +1): the commutator metric of v.
inline Matrix4c commutator_metric() {
  Matrix4c k = Matrix4c::Zero();
  k(0, 0) = -1.0;
  k(1, 1) = 1.0;
  k(2, 2) = -1.0;
  k(3, 3) = 1.0;
  return k;
}

}  // namespace fourmode
