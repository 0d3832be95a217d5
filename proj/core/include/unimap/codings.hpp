#pragma once

#include <cstdint>
#include <vector>

#include "unimap/unimodal_map.hpp"

namespace unimap {

/// Orientation involution t -> 1-t, applied `exponent` times.
constexpr double rot(std::uint64_t exponent, double t) noexcept {
  return (exponent & 1u) ? 1.0 - t : t;
}

constexpr int rot_bit(std::uint64_t exponent, int bit) noexcept {
  return (exponent & 1u) ? 1 - bit : bit;
}

/// Index reversal t -> 2^n - t - 1 on {0,...,2^n-1}.
std::uint64_t rot_index(int n, std::uint64_t t);

// Bits d_0..d_N locating a point in the nested preimage-interval tree,
// k_n = sum d_i 2^{n-i}. Always d_0 = 0. Reduces to the binary expansion
// for the tent map.
struct GDecomposition {
  std::vector<std::uint8_t> bits;  // bits[i] = d_i

  int depth() const noexcept { return static_cast<int>(bits.size()) - 1; }
};

// Bits rho_1..rho_N: rho_n records whether the (n-1)-th iterate lies left
// (0) or right (1) of the critical point; ties count as left.
struct DigitSequence {
  std::vector<std::uint8_t> bits;  // bits[i-1] = rho_i

  int depth() const noexcept { return static_cast<int>(bits.size()); }
};

// Invariant coordinates theta_0..theta_N in {-1,0,+1}: cumulative products
// of the side indicator along the orbit. Once a value is 0 all later values
// are 0.
struct InvariantCoordinates {
  std::vector<std::int8_t> values;
  // Set when a zero value was deduced from an all-zero bit tail that ends at
  // the truncation window, so the tail is unconfirmed.
  bool tail_unconfirmed = false;

  int depth() const noexcept { return static_cast<int>(values.size()) - 1; }
};

GDecomposition g_decomposition(const UnimodalMap& map, double x, int depth);
DigitSequence digit_sequence(const UnimodalMap& map, double x, int depth);
InvariantCoordinates invariant_coordinates(const UnimodalMap& map, double x, int depth);

/// rho_i = Rot^{d_{i-1}}(d_i).
DigitSequence digits_from_decomposition(const GDecomposition& d);
/// d_i = Rot^{rho_1+...+rho_i}(0), i.e. the prefix parity of the digits.
GDecomposition decomposition_from_digits(const DigitSequence& digits);

/// theta_{i-1} from d_i: 1 when d_i = 1; 0 when every later bit is 0 on the
/// available window (sets tail_unconfirmed); -1 otherwise.
InvariantCoordinates mt_from_decomposition(const GDecomposition& d);
/// d_{i+1} = 1 exactly when theta_i = 1.
GDecomposition decomposition_from_mt(const InvariantCoordinates& theta);

/// Three-way comparison in the order that makes x -> theta(x) increasing:
/// positionwise, first difference ordered left < critical < right, i.e.
/// +1 < 0 < -1 on the stored values. Sequences equal on their common prefix
/// compare equal.
int compare_invariant_coordinates(const InvariantCoordinates& a,
                                  const InvariantCoordinates& b);

}  // namespace unimap
