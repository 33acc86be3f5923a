#pragma once

#include <algorithm>
#include <cmath>

#include "fourmode/linalg.hpp"
#include "fourmode/moments.hpp"

namespace fourmode {

/// Lee nonclassicality depth: thermal noise (in photons) needed to make the
/// Glauber-Sudarshan P function regular.
struct NonclassicalityDepth {
  double tau = 0.0;
};

/// tau = max(0, largest eigenvalue of A).
inline NonclassicalityDepth lee_depth(const NormalCovariance& a) {
  const auto ev = linalg::hermitian_eigenvalues(a.m);
  return NonclassicalityDepth{std::max(0.0, ev.back())};
}

/// Depth from the down-converted pair alone. Negative values mean the pair is
/// classical; no clamping is applied.
inline double lee_depth_asymptotic(double b1, double b2, Complex d12) {
  return 0.5 * (std::sqrt((b1 - b2) * (b1 - b2) + 4.0 * std::norm(d12)) - (b1 + b2));
}

}  // namespace fourmode
