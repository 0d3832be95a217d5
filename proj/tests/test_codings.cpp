#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_support.hpp"
#include "unimap/codings.hpp"
#include "unimap/preimage_lattice.hpp"

using namespace unimap;

TEST_CASE("rot involution") {
  CHECK(rot(0, 0.3) == 0.3);
  CHECK(rot(1, 0.3) == 1.0 - 0.3);
  CHECK(rot(2, 0.3) == 0.3);
  // composition collapses exponents: Rot^{Rot^{x1}(x2)} = Rot^{x1+x2}
  for (int x1 : {0, 1})
    for (int x2 : {0, 1})
      for (double t : testutil::random_points(100, 31))
        CHECK(rot(rot_bit(x1, x2), t) == rot(x1 + x2, t));
  // and Rot^{Rot^x(0)} = Rot^x
  for (int x : {0, 1})
    for (double t : testutil::random_points(100, 32))
      CHECK(rot(rot_bit(x, 0), t) == rot(x, t));
}

TEST_CASE("rot_index") {
  CHECK(rot_index(3, 0) == 7);
  CHECK(rot_index(3, 3) == 4);
  for (int n : {1, 3, 6})
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t)
      CHECK(rot_index(n, rot_index(n, t)) == t);
  CHECK_THROWS_AS(rot_index(3, 8), std::invalid_argument);
  CHECK_THROWS_AS(rot_index(-1, 0), std::invalid_argument);
}

TEST_CASE("decomposition bits") {
  const auto tent = UnimodalMap::tent();
  CHECK(g_decomposition(tent, 1.0 / 3.0, 4).bits ==
        std::vector<std::uint8_t>{0, 0, 1, 0, 1});
  CHECK(g_decomposition(tent, 0.0, 6).bits ==
        std::vector<std::uint8_t>{0, 0, 0, 0, 0, 0, 0});
  CHECK(g_decomposition(UnimodalMap::skew_tent(1.0 / 3.0), 1.0 / 3.0, 4).bits ==
        std::vector<std::uint8_t>{0, 0, 1, 1, 1});
}

TEST_CASE("tent decompositions are binary expansions") {
  const auto tent = UnimodalMap::tent();
  for (double x : testutil::random_points(100, 33)) {
    const auto d = g_decomposition(tent, x, 40);
    double frac = x;
    for (int i = 1; i <= 40; ++i) {
      frac *= 2.0;
      const int bit = frac >= 1.0 ? 1 : 0;
      frac -= bit;
      CHECK(d.bits[i] == bit);
    }
  }
}

TEST_CASE("digit sequences") {
  const auto tent = UnimodalMap::tent();
  CHECK(digit_sequence(tent, 1.0 / 3.0, 6).bits ==
        std::vector<std::uint8_t>{0, 1, 1, 1, 1, 1});
  CHECK(digit_sequence(tent, 0.625, 6).bits ==
        std::vector<std::uint8_t>{1, 1, 0, 1, 0, 0});
  CHECK(digit_sequence(tent, 0.0, 5).bits == std::vector<std::uint8_t>{0, 0, 0, 0, 0});
}

TEST_CASE("invariant coordinates") {
  const auto tent = UnimodalMap::tent();
  CHECK(invariant_coordinates(tent, 0.25, 4).values ==
        std::vector<std::int8_t>{1, 0, 0, 0, 0});
  CHECK(invariant_coordinates(tent, 1.0 / 3.0, 3).values ==
        std::vector<std::int8_t>{1, -1, 1, -1});
  CHECK(invariant_coordinates(tent, 0.0, 3).values == std::vector<std::int8_t>{1, 1, 1, 1});
}

TEST_CASE("digits from decomposition and back") {
  CHECK(digits_from_decomposition({{0, 0, 1, 0, 1}}).bits ==
        std::vector<std::uint8_t>{0, 1, 1, 1});
  CHECK(digits_from_decomposition({{0, 1, 0, 0, 1, 1, 1}}).bits ==
        std::vector<std::uint8_t>{1, 1, 0, 1, 0, 0});
  CHECK(digits_from_decomposition({{0, 0, 0, 0}}).bits ==
        std::vector<std::uint8_t>{0, 0, 0});
  CHECK(decomposition_from_digits({{0, 1, 1, 1}}).bits ==
        std::vector<std::uint8_t>{0, 0, 1, 0, 1});
  CHECK(decomposition_from_digits({{1, 1, 0, 1, 0, 0}}).bits ==
        std::vector<std::uint8_t>{0, 1, 0, 0, 1, 1, 1});
  CHECK_THROWS_AS(digits_from_decomposition({{1, 0}}), std::invalid_argument);
}

TEST_CASE("conversion round trip is the identity on every 16-bit string") {
  for (std::uint32_t word = 0; word < (1u << 16); ++word) {
    DigitSequence rho;
    rho.bits.resize(16);
    for (int i = 0; i < 16; ++i) rho.bits[i] = (word >> i) & 1u;
    const auto d = decomposition_from_digits(rho);
    CHECK(digits_from_decomposition(d).bits == rho.bits);
  }
}

TEST_CASE("coordinates from decomposition rules") {
  CHECK(mt_from_decomposition({{0, 0, 0, 0}}).values ==
        std::vector<std::int8_t>{0, 0, 0});
  CHECK(mt_from_decomposition({{0, 0, 0, 0}}).tail_unconfirmed);
  CHECK(mt_from_decomposition({{0, 1, 0, 1, 0, 1, 0, 1}}).values ==
        std::vector<std::int8_t>{1, -1, 1, -1, 1, -1, 1});
  const auto finite = mt_from_decomposition({{0, 1, 0, 0, 0}});
  CHECK(finite.values == std::vector<std::int8_t>{1, 0, 0, 0});
  CHECK(finite.tail_unconfirmed);
}

TEST_CASE("decomposition from coordinates and the rule round trip") {
  InvariantCoordinates theta;
  theta.values = {1, -1, 1, -1};
  CHECK(decomposition_from_mt(theta).bits == std::vector<std::uint8_t>{0, 1, 0, 1, 0});
  theta.values = {0, 0, 0};
  CHECK(decomposition_from_mt(theta).bits == std::vector<std::uint8_t>{0, 0, 0, 0});

  // rule 2 after rule 1 recovers every decomposition, exhaustively to 12 bits
  for (std::uint32_t word = 0; word < (1u << 12); ++word) {
    GDecomposition d;
    d.bits.resize(13, 0);
    for (int i = 0; i < 12; ++i) d.bits[i + 1] = (word >> i) & 1u;
    const auto back = decomposition_from_mt(mt_from_decomposition(d));
    CHECK(back.bits == d.bits);
  }
}

TEST_CASE("codings computed directly and through conversions agree bitwise") {
  for (const auto& map : testutil::builtin_maps()) {
    for (double x : testutil::random_points(200, 34)) {
      const auto d = g_decomposition(map, x, 32);
      const auto rho = digit_sequence(map, x, 32);
      CHECK(digits_from_decomposition(d).bits == rho.bits);
      CHECK(decomposition_from_digits(rho).bits == d.bits);
    }
  }
}

TEST_CASE("coordinate order is monotone in the point") {
  for (const auto& map : {UnimodalMap::tent(), UnimodalMap::logistic()}) {
    auto xs = testutil::random_points(100, 35);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const auto a = invariant_coordinates(map, xs[i - 1], 32);
      const auto b = invariant_coordinates(map, xs[i], 32);
      const int cmp = compare_invariant_coordinates(a, b);
      CHECK(cmp <= 0);
      if (a.values != b.values) CHECK(cmp < 0);
    }
  }
}

TEST_CASE("coordinate comparison basics") {
  InvariantCoordinates left, right, zero;
  left.values = {1, 1};    // a point left of the critical point, staying left
  right.values = {-1, 1};  // a point right of it
  zero.values = {1, 0};
  CHECK(compare_invariant_coordinates(left, right) < 0);
  CHECK(compare_invariant_coordinates(right, left) > 0);
  CHECK(compare_invariant_coordinates(left, zero) < 0);
  CHECK(compare_invariant_coordinates(zero, right) < 0);
  CHECK(compare_invariant_coordinates(left, left) == 0);
  InvariantCoordinates prefix;
  prefix.values = {1};
  CHECK(compare_invariant_coordinates(prefix, left) == 0);
}
