#pragma once

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "fourmode/error.hpp"
#include "fourmode/linalg.hpp"

namespace fourmode {

inline constexpr int kModes = 4;

/// Subset of the mode labels {1, 2, 3, 4}.
class ModeSet {
 public:
  constexpr ModeSet() = default;
  constexpr ModeSet(std::initializer_list<int> modes) {
    for (int m : modes) {
      if (m < 1 || m > kModes) throw Error(ErrorKind::invalid_side, "mode label out of range");
      bits_ |= static_cast<std::uint8_t>(1u << (m - 1));
    }
  }

  static constexpr ModeSet all() { return from_bits(0b1111); }
  static constexpr ModeSet from_bits(unsigned bits) {
    ModeSet s;
    s.bits_ = static_cast<std::uint8_t>(bits & 0b1111u);
    return s;
  }
  /// Parses a digit string such as "124".
  static ModeSet parse(const std::string& text) {
    ModeSet s;
    for (char c : text) {
      if (c < '1' || c > '4') throw Error(ErrorKind::invalid_side, "bad mode set '" + text + "'");
      s.bits_ |= static_cast<std::uint8_t>(1u << (c - '1'));
    }
    return s;
  }

  constexpr unsigned bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(static_cast<unsigned>(bits_)); }
  constexpr bool contains(int mode) const {
    return mode >= 1 && mode <= kModes && (bits_ >> (mode - 1)) & 1u;
  }
  constexpr bool subset_of(ModeSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr ModeSet operator|(ModeSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr ModeSet operator&(ModeSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr ModeSet minus(ModeSet o) const { return from_bits(bits_ & ~o.bits_); }
  constexpr bool operator==(const ModeSet&) const = default;

  /// Ascending mode labels.
  std::vector<int> modes() const {
    std::vector<int> out;
    for (int m = 1; m <= kModes; ++m)
      if (contains(m)) out.push_back(m);
    return out;
  }
  std::string to_string() const {
    std::string s;
    for (int m : modes()) s += static_cast<char>('0' + m);
    return s;
  }

 private:
  std::uint8_t bits_ = 0;
};

/// Complete description of the zero-mean four-mode Gaussian state:
/// mean photon numbers B_j, pair correlators D_jk = <a_j a_k> and transfer
/// correlators Dbar_jk = -<a_j^dag a_k>. Only the pairs reachable from vacuum
/// are stored; every other correlator is identically zero.
struct GaussianState {
  std::array<double, 4> B{};
  Complex d12{}, d14{}, d23{}, d34{};
  Complex dbar13{}, dbar24{};

  double b(int mode) const { return B.at(static_cast<std::size_t>(mode - 1)); }

  /// D_ij = <a_i a_j>, symmetric in (i, j).
  Complex pair(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == 1 && j == 2) return d12;
    if (i == 1 && j == 4) return d14;
    if (i == 2 && j == 3) return d23;
    if (i == 3 && j == 4) return d34;
    return {};
  }

  /// Dbar_ij = -<a_i^dag a_j>; Dbar_ji = conj(Dbar_ij).
  Complex transfer(int i, int j) const {
    const bool swapped = i > j;
    if (swapped) std::swap(i, j);
    Complex v{};
    if (i == 1 && j == 3) v = dbar13;
    if (i == 2 && j == 4) v = dbar24;
    return swapped ? std::conj(v) : v;
  }
};

}  // namespace fourmode
