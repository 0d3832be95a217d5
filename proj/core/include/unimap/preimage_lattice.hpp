#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unimap/codings.hpp"
#include "unimap/unimodal_map.hpp"

namespace unimap {

// Sorted n-th preimages of 0. Level n holds 2^{n-1}+1 points starting at 0
// and ending at 1; level n+1 keeps level-n points verbatim at even indices
// and inserts one new point per interval.
struct PreimageLevel {
  int level = 0;
  std::vector<double> points;
};

/// Builds level n by pulling level n-1 back through both branch inverses;
/// level 1 = {0,1}. Capped at n = 20 (2^{n-1}+1 points of storage).
PreimageLevel preimage_level(const UnimodalMap& map, int n);

// One row of a localization descent: endpoints are the consecutive
// level-(n+1) lattice points around the target, the midpoint is the
// level-(n+2) point strictly between them.
struct LocalizedInterval {
  int depth = 0;            // n
  std::uint64_t index = 0;  // k_n in [0, 2^n)
  double left = 0.0;        // mu_{n+1,k_n}
  double right = 1.0;       // mu_{n+1,k_n+1}
  double midpoint = 0.5;    // mu_{n+2,2k_n+1}
  double length = 1.0;      // right - left
  double delta = 0.5;       // (midpoint - left) / length, in (0,1)
  int next_bit = 0;         // d_{n+1}
};

struct LocalizationPath {
  double target = 0.0;
  int depth = 0;                          // deepest completed level N
  std::vector<LocalizedInterval> levels;  // rows 0..N
  std::string diagnostic;                 // set when truncated or past the warn depth

  /// d_i for 0 <= i <= depth+1 (d_0 = 0).
  int bit(int i) const;
};

enum class MidpointStrategy {
  Auto,       // pullback when analytic inverses exist, else bisection
  Bisection,  // solve g^n(y) = v on the interval
  Pullback    // branch-inverse chain driven by the interval's index bits
};

/// The level-(n+2) lattice point inside the interval: the unique y with
/// g^n(y) = v. The monotone restriction of g^n is increasing exactly when
/// the interval index is even. Throws std::runtime_error when the bisection
/// sign test degenerates (accumulated rounding at excessive depth).
double refine_midpoint(const UnimodalMap& map, const LocalizedInterval& interval,
                       MidpointStrategy strategy = MidpointStrategy::Auto);

/// (midpoint - left) / (right - left); rejects zero-length intervals.
double delta_ratio(const LocalizedInterval& interval);

/// Nested-interval descent of x to the given depth. Ties go left, the
/// minimal-index convention, with the tie window 1e-12 scaled by the
/// interval length. Midpoint failures truncate the path at the last good
/// depth and leave a diagnostic instead of throwing.
LocalizationPath localize(const UnimodalMap& map, double x, int depth);

/// k_{i,j} = sum_{t=i..j} d_t 2^{j-t}; k_{0,n} = k_{1,n} = k_n.
std::uint64_t index_window(const GDecomposition& d, int i, int j);

/// The exact digit sequence of the lattice point mu_{level,k} under the
/// ties-left convention: the interval address, a tie digit, the peak hit,
/// then zeros forever. Identical for every unimodal map.
DigitSequence lattice_point_digits(int level, std::uint64_t k, int depth);

// Incremental descent through the preimage interval tree; localize() drives
// it by comparisons against the target, decode() by a given bit string.
class IntervalWalker {
 public:
  explicit IntervalWalker(const UnimodalMap& map);

  const LocalizedInterval& current() const noexcept { return cur_; }
  LocalizedInterval& current() noexcept { return cur_; }
  int depth() const noexcept { return cur_.depth; }

  /// Fixes d_{n+1} = bit on the current row and descends into that half.
  /// Throws std::runtime_error when the refined midpoint collapses onto an
  /// endpoint (binary64 resolution exhausted).
  void descend(int bit);

 private:
  const UnimodalMap* map_;
  LocalizedInterval cur_;
  std::vector<std::uint8_t> branch_digits_;  // rho_i = d_{i-1} xor d_i, i = 1..n
  std::uint8_t last_bit_ = 0;
};

}  // namespace unimap
