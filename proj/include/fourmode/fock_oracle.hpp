#pragma once

// Truncated Fock-space evolution of the noiseless four-mode Hamiltonian,
// used as an independent check of the Gaussian moment pipeline.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "fourmode/correlations.hpp"
#include "fourmode/error.hpp"
#include "fourmode/model.hpp"
#include "fourmode/state.hpp"

namespace fourmode {

struct FockState {
  int cutoff = 0;                      // photons per mode are 0 .. cutoff-1
  Eigen::VectorXcd amplitudes;         // index ((n1 N + n2) N + n3) N + n4

  std::size_t index(const std::array<int, 4>& n) const {
    std::size_t k = 0;
    for (int m : n) k = k * static_cast<std::size_t>(cutoff) + static_cast<std::size_t>(m);
    return k;
  }
  std::array<int, 4> occupation(std::size_t k) const {
    std::array<int, 4> n{};
    for (int m = 3; m >= 0; --m) {
      n[static_cast<std::size_t>(m)] = static_cast<int>(k % static_cast<std::size_t>(cutoff));
      k /= static_cast<std::size_t>(cutoff);
    }
    return n;
  }
  double norm_squared() const { return amplitudes.squaredNorm(); }
  /// Population of basis states with some mode at the truncation edge.
  double boundary_population() const {
    double p = 0.0;
    for (Eigen::Index k = 0; k < amplitudes.size(); ++k) {
      const auto n = occupation(static_cast<std::size_t>(k));
      if (std::any_of(n.begin(), n.end(), [&](int m) { return m == cutoff - 1; })) p += std::norm(amplitudes[k]);
    }
    return p;
  }
};

inline constexpr double kFockLeakageTol = 1e-6;
inline constexpr std::size_t kFockMaxAmplitudes = std::size_t{1} << 24;

/// Interaction Hamiltonian g1 a1^dag a2^dag + g2 a1 a3^dag + g3 a2 a4^dag + H.c.
/// projected onto the truncated lattice.
inline Eigen::SparseMatrix<double, Eigen::RowMajor> fock_hamiltonian(const SystemConfig& cfg, int cutoff) {
  const FockState shape{cutoff, {}};
  const std::size_t dim = static_cast<std::size_t>(cutoff) * cutoff * cutoff * cutoff;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(dim * 6);
  // Raising mode `up` and lowering mode `down` (or raising both when `pair`).
  auto add = [&](std::size_t col, std::array<int, 4> n, int i, int j, bool pair, double g) {
    if (g == 0.0) return;
    double amp = 1.0;
    if (pair) {
      if (n[i] + 1 >= cutoff || n[j] + 1 >= cutoff) return;
      amp = std::sqrt(static_cast<double>((n[i] + 1) * (n[j] + 1)));
      ++n[i];
      ++n[j];
    } else {
      if (n[j] == 0 || n[i] + 1 >= cutoff) return;
      amp = std::sqrt(static_cast<double>((n[i] + 1) * n[j]));
      ++n[i];
      --n[j];
    }
    const std::size_t row = shape.index(n);
    const double v = g * amp;
    trips.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), v);
    trips.emplace_back(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(row), v);
  };
  for (std::size_t k = 0; k < dim; ++k) {
    const auto n = shape.occupation(k);
    add(k, n, 0, 1, true, cfg.g1t);   // a1^dag a2^dag (+ a1 a2)
    add(k, n, 2, 0, false, cfg.g2t);  // a3^dag a1 (+ a1^dag a3)
    add(k, n, 3, 1, false, cfg.g3t);  // a4^dag a2 (+ a2^dag a4)
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.setFromTriplets(trips.begin(), trips.end());
  return h;
}

/// Evolves the vacuum over s in [0, 1] with d psi/ds = +i H psi, the
/// orientation whose Heisenberg picture is the drift matrix U.
inline FockState fock_evolve(const SystemConfig& cfg, int cutoff = 10, int steps = 1000) {
  validate(cfg);
  if (!cfg.noiseless()) throw Error(ErrorKind::unsupported_config, "Fock oracle is noiseless only");
  if (cutoff < 2) throw Error(ErrorKind::invalid_config, "cutoff must be >= 2");
  if (steps < 1) throw Error(ErrorKind::invalid_config, "steps must be >= 1");
  const double dim = std::pow(static_cast<double>(cutoff), 4);
  if (dim > static_cast<double>(kFockMaxAmplitudes))
    throw Error(ErrorKind::invalid_config, "cutoff exceeds the amplitude budget");

  const auto h = fock_hamiltonian(cfg, cutoff);
  FockState st{cutoff, Eigen::VectorXcd(static_cast<Eigen::Index>(dim))};

  // H is real, so d(re)/ds = -H im and d(im)/ds = H re.
  const double dt = 1.0 / steps;
  Eigen::VectorXd re = Eigen::VectorXd::Zero(h.rows()), im = Eigen::VectorXd::Zero(h.rows());
  re[0] = 1.0;
  Eigen::VectorXd r1, i1, r2, i2, r3, i3, r4, i4;
  for (int n = 0; n < steps; ++n) {
    r1.noalias() = -dt * (h * im);
    i1.noalias() = dt * (h * re);
    r2.noalias() = -dt * (h * (im + 0.5 * i1));
    i2.noalias() = dt * (h * (re + 0.5 * r1));
    r3.noalias() = -dt * (h * (im + 0.5 * i2));
    i3.noalias() = dt * (h * (re + 0.5 * r2));
    r4.noalias() = -dt * (h * (im + i3));
    i4.noalias() = dt * (h * (re + r3));
    re += (r1 + 2.0 * r2 + 2.0 * r3 + r4) / 6.0;
    im += (i1 + 2.0 * i2 + 2.0 * i3 + i4) / 6.0;
  }
  st.amplitudes.real() = re;
  st.amplitudes.imag() = im;
  const double leak = st.boundary_population();
  if (leak > kFockLeakageTol)
    throw Error(ErrorKind::truncation_overflow,
                "boundary population " + std::to_string(leak) + " at cutoff " + std::to_string(cutoff));
  return st;
}

/// Exact expectation values in the GaussianState conventions, plus the full
/// photon-number covariance matrix.
struct FockMoments {
  GaussianState state;
  std::array<std::array<double, 4>, 4> dn_dn{};  // <dn_i dn_j>
};

inline FockMoments fock_moments(const FockState& st) {
  const auto& psi = st.amplitudes;
  const double norm = st.norm_squared();
  std::array<double, 4> n_mean{};
  std::array<std::array<double, 4>, 4> nn{};
  // <a_i a_j> for pairs and <a_i^dag a_j> for transfers.
  auto pair_corr = [&](int i, int j) {
    Complex acc = 0.0;
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      auto n = st.occupation(static_cast<std::size_t>(k));
      if (n[i] == 0 || n[j] == 0) continue;
      const double amp = std::sqrt(static_cast<double>(n[i] * n[j]));
      --n[i];
      --n[j];
      acc += std::conj(psi[static_cast<Eigen::Index>(st.index(n))]) * amp * psi[k];
    }
    return acc / norm;
  };
  auto transfer_corr = [&](int i, int j) {
    Complex acc = 0.0;
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      auto n = st.occupation(static_cast<std::size_t>(k));
      if (n[j] == 0 || n[i] + 1 >= st.cutoff) continue;
      const double amp = std::sqrt(static_cast<double>((n[i] + 1) * n[j]));
      ++n[i];
      --n[j];
      acc += std::conj(psi[static_cast<Eigen::Index>(st.index(n))]) * amp * psi[k];
    }
    return acc / norm;
  };
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    const double p = std::norm(psi[k]) / norm;
    const auto n = st.occupation(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < 4; ++i) {
      n_mean[i] += p * n[i];
      for (std::size_t j = 0; j < 4; ++j) nn[i][j] += p * n[i] * n[j];
    }
  }
  FockMoments out;
  out.state.B = n_mean;
  out.state.d12 = pair_corr(0, 1);
  out.state.d14 = pair_corr(0, 3);
  out.state.d23 = pair_corr(1, 2);
  out.state.d34 = pair_corr(2, 3);
  out.state.dbar13 = -transfer_corr(0, 2);
  out.state.dbar24 = -transfer_corr(1, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out.dn_dn[i][j] = nn[i][j] - n_mean[i] * n_mean[j];
  return out;
}

/// Largest absolute difference between Fock and Gaussian values of B_j,
/// |D|, |Dbar| and <dn_i dn_j> (i != j).
inline double moment_deviation(const FockMoments& fock, const GaussianState& gauss) {
  double dev = 0.0;
  auto upd = [&](double a, double b) { dev = std::max(dev, std::abs(a - b)); };
  for (int j = 1; j <= kModes; ++j) upd(fock.state.b(j), gauss.b(j));
  upd(std::abs(fock.state.d12), std::abs(gauss.d12));
  upd(std::abs(fock.state.d14), std::abs(gauss.d14));
  upd(std::abs(fock.state.d23), std::abs(gauss.d23));
  upd(std::abs(fock.state.d34), std::abs(gauss.d34));
  upd(std::abs(fock.state.dbar13), std::abs(gauss.dbar13));
  upd(std::abs(fock.state.dbar24), std::abs(gauss.dbar24));
  for (int i = 1; i <= kModes; ++i)
    for (int j = i + 1; j <= kModes; ++j)
      upd(fock.dn_dn[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)],
          photon_number_covariance(gauss, i, j));
  return dev;
}

}  // namespace fourmode
