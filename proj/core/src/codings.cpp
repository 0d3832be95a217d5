#include "unimap/codings.hpp"

#include <cmath>
#include <stdexcept>

#include "unimap/preimage_lattice.hpp"

namespace unimap {

std::uint64_t rot_index(int n, std::uint64_t t) {
  if (n < 0 || n > 63) throw std::invalid_argument("rot_index level must be in [0,63]");
  const std::uint64_t size = std::uint64_t{1} << n;
  if (t >= size) throw std::invalid_argument("rot_index argument out of range");
  return size - t - 1;
}

GDecomposition g_decomposition(const UnimodalMap& map, double x, int depth) {
  const LocalizationPath path = localize(map, x, depth);
  if (path.depth < depth)
    throw std::runtime_error("g_decomposition: localization truncated: " + path.diagnostic);
  GDecomposition d;
  d.bits.resize(depth + 1, 0);
  for (int i = 1; i <= depth; ++i)
    d.bits[i] = static_cast<std::uint8_t>(path.levels[i - 1].next_bit);
  return d;
}

DigitSequence digit_sequence(const UnimodalMap& map, double x, int depth) {
  if (depth < 0) throw std::invalid_argument("digit depth must be >= 0");
  const double v = map.critical_point();
  DigitSequence rho;
  rho.bits.reserve(depth);
  double t = x;
  for (int n = 1; n <= depth; ++n) {
    rho.bits.push_back(t <= v + num::kTieTol ? 0 : 1);
    t = map.evaluate(t);
  }
  return rho;
}

InvariantCoordinates invariant_coordinates(const UnimodalMap& map, double x, int depth) {
  if (depth < 0) throw std::invalid_argument("coordinate depth must be >= 0");
  const double v = map.critical_point();
  InvariantCoordinates theta;
  theta.values.resize(depth + 1, 0);
  double t = x;
  int product = 1;
  for (int n = 0; n <= depth; ++n) {
    const int eps = std::fabs(t - v) <= num::kTieTol ? 0 : (t < v ? 1 : -1);
    product *= eps;
    theta.values[n] = static_cast<std::int8_t>(product);
    if (product == 0) break;  // annihilated; the tail stays 0
    t = map.evaluate(t);
  }
  return theta;
}

DigitSequence digits_from_decomposition(const GDecomposition& d) {
  if (!d.bits.empty() && d.bits[0] != 0)
    throw std::invalid_argument("decomposition must start with d_0 = 0");
  DigitSequence rho;
  const int n = d.depth();
  rho.bits.reserve(n > 0 ? n : 0);
  for (int i = 1; i <= n; ++i)
    rho.bits.push_back(static_cast<std::uint8_t>(d.bits[i - 1] ^ d.bits[i]));
  return rho;
}

GDecomposition decomposition_from_digits(const DigitSequence& digits) {
  GDecomposition d;
  d.bits.reserve(digits.bits.size() + 1);
  d.bits.push_back(0);
  std::uint8_t parity = 0;
  for (std::uint8_t r : digits.bits) {
    if (r > 1) throw std::invalid_argument("digit bits must be 0 or 1");
    parity ^= r;
    d.bits.push_back(parity);
  }
  return d;
}

InvariantCoordinates mt_from_decomposition(const GDecomposition& d) {
  if (!d.bits.empty() && d.bits[0] != 0)
    throw std::invalid_argument("decomposition must start with d_0 = 0");
  const int n = d.depth();
  int last_nonzero = 0;  // largest i >= 1 with d_i = 1
  for (int i = 1; i <= n; ++i)
    if (d.bits[i]) last_nonzero = i;
  InvariantCoordinates theta;
  theta.values.reserve(n > 0 ? n : 0);
  for (int i = 1; i <= n; ++i) {
    if (d.bits[i]) {
      theta.values.push_back(1);
    } else if (i > last_nonzero) {
      theta.values.push_back(0);
      theta.tail_unconfirmed = true;  // the zero tail ends at the window
    } else {
      theta.values.push_back(-1);
    }
  }
  return theta;
}

GDecomposition decomposition_from_mt(const InvariantCoordinates& theta) {
  GDecomposition d;
  d.bits.reserve(theta.values.size() + 1);
  d.bits.push_back(0);
  for (std::int8_t t : theta.values) d.bits.push_back(t == 1 ? 1 : 0);
  return d;
}

int compare_invariant_coordinates(const InvariantCoordinates& a,
                                  const InvariantCoordinates& b) {
  const std::size_t common = std::min(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (a.values[i] == b.values[i]) continue;
    // left < critical < right, encoded as +1, 0, -1
    return a.values[i] > b.values[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace unimap
