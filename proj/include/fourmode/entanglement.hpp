#pragma once

// Partial transposition and logarithmic negativity for bipartitions of the
// present modes, plus the two-mode closed forms.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fourmode/error.hpp"
#include "fourmode/moments.hpp"
#include "fourmode/symplectic.hpp"

namespace fourmode {

enum class LogBase { natural, two };

inline double log_in(double x, LogBase base) {
  return base == LogBase::two ? std::log2(x) : std::log(x);
}

/// Negativities smaller than this are reported as exactly zero.
inline constexpr double kNegativityFloor = 1e-10;

struct Bipartition {
  ModeSet side_a;
  ModeSet side_b;

  /// side_a x (present \ side_a).
  static Bipartition of(ModeSet side_a, ModeSet present = ModeSet::all()) {
    if (side_a.empty() || !side_a.subset_of(present) || side_a == present)
      throw Error(ErrorKind::invalid_side, "side '" + side_a.to_string() +
                                               "' is not a proper subset of '" + present.to_string() +
                                               "'");
    return Bipartition{side_a, present.minus(side_a)};
  }
  /// Parses "1x234", "13x24", ...
  static Bipartition parse(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw Error(ErrorKind::invalid_side, "bad bipartition '" + text + "'");
    const ModeSet a = ModeSet::parse(text.substr(0, x));
    const ModeSet b = ModeSet::parse(text.substr(x + 1));
    if (a.empty() || b.empty() || !(a & b).empty())
      throw Error(ErrorKind::invalid_side, "bad bipartition '" + text + "'");
    return Bipartition{a, b};
  }

  ModeSet present() const { return side_a | side_b; }
  std::string to_string() const { return side_a.to_string() + "x" + side_b.to_string(); }
};

struct NegativityResult {
  double value = 0.0;
  std::vector<double> symplectic_spectrum;  // of the partially transposed sigma
};

/// Flips the sign of the momentum row and column of every mode in `side`.
inline SymmetricCovariance partial_transpose(const SymmetricCovariance& sigma, ModeSet side) {
  if (!side.subset_of(sigma.modes))
    throw Error(ErrorKind::invalid_side, "side '" + side.to_string() + "' not among present modes '" +
                                             sigma.modes.to_string() + "'");
  SymmetricCovariance out = sigma;
  for (int mode : side.modes()) {
    const Eigen::Index p = sigma.offset(mode) + 1;
    out.m.row(p) *= -1.0;
    out.m.col(p) *= -1.0;
  }
  return out;
}

inline std::vector<double> symplectic_eigenvalues(const SymmetricCovariance& sigma) {
  return symplectic_eigenvalues(sigma.m);
}

/// E = max(0, -sum_{nu < 1/2} log(2 nu)) for a spectrum.
inline double negativity_from_spectrum(const std::vector<double>& nus, LogBase base = LogBase::natural) {
  double e = 0.0;
  for (double nu : nus)
    if (nu < 0.5) e -= log_in(2.0 * nu, base);
  return e < kNegativityFloor ? 0.0 : e;
}

inline NegativityResult log_negativity(const SymmetricCovariance& sigma, const Bipartition& bip,
                                       LogBase base = LogBase::natural) {
  if (!(bip.side_a & bip.side_b).empty() || bip.side_a.empty() || bip.side_b.empty() ||
      bip.present() != sigma.modes)
    throw Error(ErrorKind::invalid_side, "bipartition " + bip.to_string() +
                                             " does not split modes '" + sigma.modes.to_string() + "'");
  NegativityResult r;
  r.symplectic_spectrum = symplectic_eigenvalues(partial_transpose(sigma, bip.side_a));
  r.value = negativity_from_spectrum(r.symplectic_spectrum, base);
  return r;
}

/// Negativity of the reduced pair (i, j) straight from B_i, B_j, |D_ij|,
/// valid for pairs without a transfer correlator. Evaluated in long double
/// with the square root rationalized away, so strongly populated modes do not
/// cancel catastrophically.
inline double two_mode_negativity_closed_form(double bi, double bj, Complex dij,
                                              LogBase base = LogBase::natural) {
  using R = long double;
  const R b1 = bi, b2 = bj;
  const R d2 = static_cast<R>(dij.real()) * dij.real() + static_cast<R>(dij.imag()) * dij.imag();
  const R sum = R(1) + b1 + b2;
  const R root = std::sqrt((b1 - b2) * (b1 - b2) + R(4) * d2);
  // (1 + bi + bj) - root == [(1 + bi + bj)^2 - (bi - bj)^2 - 4|d|^2] / (1 + bi + bj + root)
  const R numer = R(1) + R(2) * (b1 + b2) + R(4) * (b1 * b2 - d2);
  const R arg = numer / (sum + root);
  if (arg <= R(0)) throw Error(ErrorKind::domain_error, "two-mode negativity argument <= 0");
  R e = -std::log(arg);
  if (base == LogBase::two) e /= std::numbers::ln2_v<R>;
  const double out = static_cast<double>(e);
  return out < kNegativityFloor ? 0.0 : out;
}

/// |D_ij|^2 - B_i B_j, positive exactly for entangled reduced pairs.
inline double pair_entanglement_margin(double bi, double bj, Complex dij) {
  return std::norm(dij) - bi * bj;
}

inline constexpr double kEntanglementTol = 1e-12;

/// Margin tolerance: 1e-12, shrunk with the pair population below one photon
/// so nearly empty pairs are not forced to test separable.
inline double entanglement_tolerance(double bi, double bj) {
  return kEntanglementTol * std::min(1.0, bi + bj);
}

/// B_i B_j < |D_ij|^2 beyond entanglement_tolerance.
inline bool pair_entanglement_test(double bi, double bj, Complex dij) {
  return pair_entanglement_margin(bi, bj, dij) > entanglement_tolerance(bi, bj);
}

}  // namespace fourmode
