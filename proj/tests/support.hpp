#pragma once

#include <cmath>
#include <vector>

#include "fourmode/fourmode.hpp"

namespace fourmode::test {

// Two-mode squeezed vacuum with squeezing r: populations and correlator.
inline double tmsv_population(double r) { return std::sinh(r) * std::sinh(r); }
inline double tmsv_correlator(double r) { return std::sinh(r) * std::cosh(r); }

inline GaussianState squeezer_state(double r) {
  GaussianState st;
  st.B[0] = st.B[1] = tmsv_population(r);
  st.d12 = Complex(0.0, tmsv_correlator(r));
  return st;
}

inline SystemConfig config(double g1, double g2, double g3) {
  SystemConfig cfg;
  cfg.g1t = g1;
  cfg.g2t = g2;
  cfg.g3t = g3;
  return cfg;
}

/// Noiseless symmetric grid used by the property tests.
inline std::vector<SystemConfig> symmetric_grid(double step = 0.1) {
  std::vector<SystemConfig> out;
  const int n1 = static_cast<int>(std::lround(5.9 / step));
  const int n23 = static_cast<int>(std::lround(7.0 / step));
  for (int i = 0; i <= n1; ++i)
    for (int j = 0; j <= n23; ++j) out.push_back(SystemConfig::symmetric(i * step, j * step));
  return out;
}

inline double max_abs_diff(const GaussianState& a, const GaussianState& b) {
  double d = 0.0;
  for (int j = 1; j <= kModes; ++j) d = std::max(d, std::abs(a.b(j) - b.b(j)));
  d = std::max(d, std::abs(a.d12 - b.d12));
  d = std::max(d, std::abs(a.d14 - b.d14));
  d = std::max(d, std::abs(a.d23 - b.d23));
  d = std::max(d, std::abs(a.d34 - b.d34));
  d = std::max(d, std::abs(a.dbar13 - b.dbar13));
  d = std::max(d, std::abs(a.dbar24 - b.dbar24));
  return d;
}

inline double total_population(const GaussianState& st) { return st.B[0] + st.B[1] + st.B[2] + st.B[3]; }

inline double pair_negativity_ppt(const GaussianState& st, int i, int j, LogBase base = LogBase::natural) {
  const ReducedState red = reduce_modes(st, ModeSet{i, j});
  return log_negativity(red.sigma, Bipartition::of(ModeSet{i}, red.sigma.modes), base).value;
}

}  // namespace fourmode::test
