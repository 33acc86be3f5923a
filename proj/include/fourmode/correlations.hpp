#pragma once

// Photon-number statistics of the reduced pairs and the separable /
// entangled / sub-shot-noise classification.

#include <cmath>
#include <string>
#include <string_view>

#include "fourmode/entanglement.hpp"
#include "fourmode/error.hpp"
#include "fourmode/state.hpp"

namespace fourmode {

enum class PairLabel { separable, entangled_no_ssn, entangled_ssn };

constexpr std::string_view to_string(PairLabel label) {
  switch (label) {
    case PairLabel::separable: return "separable";
    case PairLabel::entangled_no_ssn: return "entangled_no_ssn";
    case PairLabel::entangled_ssn: return "entangled_ssn";
  }
  return "unknown";
}

struct PairClassification {
  PairLabel label = PairLabel::separable;
  double E = 0.0;
  double R = 1.0;
  bool boundary = false;  // a criterion sits inside its tolerance band
};

inline void check_modes(int i, int j) {
  if (i < 1 || i > kModes || j < 1 || j > kModes)
    throw Error(ErrorKind::invalid_side, "mode index out of range");
  if (i == j) throw Error(ErrorKind::same_mode, "use photon_number_variance for a single mode");
}

/// <dn_i dn_j> = |<a_i a_j>|^2 + |<a_i^dag a_j>|^2 (Gaussian moment factorization).
inline double photon_number_covariance(const GaussianState& st, int i, int j) {
  check_modes(i, j);
  return std::norm(st.pair(i, j)) + std::norm(st.transfer(i, j));
}

/// <(dn_i)^2> = B_i (B_i + 1); no single-mode squeezing arises from vacuum.
inline double photon_number_variance(const GaussianState& st, int i) {
  const double b = st.b(i);
  return b * (b + 1.0);
}

/// R = <(d(n_i - n_j))^2> / (<n_i> + <n_j>); exactly 1 for an empty pair.
inline double noise_reduction_factor(const GaussianState& st, int i, int j) {
  check_modes(i, j);
  const double bi = st.b(i), bj = st.b(j);
  if (bi + bj < 1e-14) return 1.0;
  return 1.0 + (bi * bi + bj * bj - 2.0 * photon_number_covariance(st, i, j)) / (bi + bj);
}

inline constexpr double kSubShotNoiseTol = 1e-10;

inline bool has_pair_correlator(int i, int j) {
  if (i > j) std::swap(i, j);
  return (i == 1 && j == 2) || (i == 1 && j == 4) || (i == 2 && j == 3) || (i == 3 && j == 4);
}

inline PairClassification classify_pair(const GaussianState& st, int i, int j,
                                        LogBase base = LogBase::natural) {
  check_modes(i, j);
  if (!has_pair_correlator(i, j))
    throw Error(ErrorKind::unsupported_pair,
                "pair " + std::to_string(i) + std::to_string(j) + " carries no pair correlator");
  const double bi = st.b(i), bj = st.b(j);
  const Complex d = st.pair(i, j);

  PairClassification out;
  out.R = noise_reduction_factor(st, i, j);
  out.E = two_mode_negativity_closed_form(bi, bj, d, base);

  const double margin = pair_entanglement_margin(bi, bj, d);
  const double tol = entanglement_tolerance(bi, bj);
  const bool entangled = margin > tol;
  const bool ssn = 1.0 - out.R > kSubShotNoiseTol;
  out.boundary = std::abs(margin) <= tol || std::abs(1.0 - out.R) <= kSubShotNoiseTol;

  if (!entangled) {
    // Sub-shot-noise without entanglement can only be a tolerance artifact.
    out.label = PairLabel::separable;
    if (ssn) out.boundary = true;
  } else {
    out.label = ssn ? PairLabel::entangled_ssn : PairLabel::entangled_no_ssn;
  }
  return out;
}

}  // namespace fourmode
