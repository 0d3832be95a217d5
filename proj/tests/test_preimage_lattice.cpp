#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_support.hpp"
#include "unimap/preimage_lattice.hpp"

using namespace unimap;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("first levels are universal") {
  for (const auto& map : testutil::builtin_maps()) {
    const auto l1 = preimage_level(map, 1);
    CHECK(l1.points == std::vector<double>{0.0, 1.0});
    const auto l2 = preimage_level(map, 2);
    REQUIRE(l2.points.size() == 3);
    CHECK(l2.points[1] == doctest::Approx(map.critical_point()).epsilon(1e-14));
  }
}

TEST_CASE("skew tent level values") {
  const auto map = UnimodalMap::skew_tent(1.0 / 3.0);
  const auto l3 = preimage_level(map, 3);
  const std::vector<double> expect3 = {0.0, 1.0 / 9.0, 1.0 / 3.0, 7.0 / 9.0, 1.0};
  REQUIRE(l3.points.size() == expect3.size());
  for (std::size_t i = 0; i < expect3.size(); ++i)
    CHECK(l3.points[i] == doctest::Approx(expect3[i]).epsilon(1e-15));

  const auto l4 = preimage_level(map, 4);
  const std::vector<double> expect4 = {0.0,        1.0 / 27.0, 1.0 / 9.0, 7.0 / 27.0, 1.0 / 3.0,
                                       13.0 / 27.0, 7.0 / 9.0, 25.0 / 27.0, 1.0};
  REQUIRE(l4.points.size() == expect4.size());
  for (std::size_t i = 0; i < expect4.size(); ++i)
    CHECK(l4.points[i] == doctest::Approx(expect4[i]).epsilon(1e-15));
}

TEST_CASE("tent levels are the dyadic lattice") {
  const auto tent = UnimodalMap::tent();
  for (int n = 1; n <= 12; ++n) {
    const auto level = preimage_level(tent, n);
    const double den = std::ldexp(1.0, n - 1);
    REQUIRE(level.points.size() == static_cast<std::size_t>(den) + 1);
    for (std::size_t k = 0; k < level.points.size(); ++k)
      CHECK(std::fabs(level.points[k] - k / den) <= 1e-12);
  }
}

TEST_CASE("logistic levels match the half-angle closed form") {
  const auto logistic = UnimodalMap::logistic();
  for (int n = 2; n <= 10; ++n) {
    const auto level = preimage_level(logistic, n);
    for (std::size_t k = 0; k < level.points.size(); ++k) {
      const double s = std::sin(kPi * k / std::ldexp(2.0, n - 1));
      CHECK(std::fabs(level.points[k] - s * s) <= 1e-12);
    }
  }
}

TEST_CASE("level structure: size, order, endpoints, forward iterates") {
  for (const auto& map : testutil::builtin_maps()) {
    for (int n = 1; n <= 8; ++n) {
      const auto level = preimage_level(map, n);
      CHECK(level.points.size() == (std::size_t{1} << (n - 1)) + 1);
      CHECK(level.points.front() == 0.0);
      CHECK(level.points.back() == 1.0);
      for (std::size_t k = 0; k + 1 < level.points.size(); ++k)
        CHECK(level.points[k] < level.points[k + 1]);
      for (double mu : level.points)
        CHECK(std::fabs(map.iterate(mu, n)) <= 1e-9);
    }
  }
}

TEST_CASE("levels nest exactly") {
  for (const auto& map : testutil::builtin_maps()) {
    const auto coarse = preimage_level(map, 6);
    const auto fine = preimage_level(map, 7);
    for (std::size_t k = 0; k < coarse.points.size(); ++k)
      CHECK(fine.points[2 * k] == coarse.points[k]);
  }
}

TEST_CASE("level bounds") {
  const auto tent = UnimodalMap::tent();
  CHECK_THROWS_AS(preimage_level(tent, 0), std::invalid_argument);
  CHECK_THROWS_AS(preimage_level(tent, 21), std::invalid_argument);
}

TEST_CASE("refine_midpoint") {
  const auto tent = UnimodalMap::tent();
  SUBCASE("depth zero solves the identity") {
    LocalizedInterval root;
    for (const auto& map : testutil::builtin_maps())
      CHECK(refine_midpoint(map, root) == map.critical_point());
  }
  SUBCASE("first split of the tent") {
    LocalizedInterval half{1, 0, 0.0, 0.5, 0.0, 0.5, 0.0, 0};
    CHECK(refine_midpoint(tent, half) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(refine_midpoint(tent, half, MidpointStrategy::Bisection) ==
          doctest::Approx(0.25).epsilon(1e-10));
  }
  SUBCASE("skew tent first split") {
    LocalizedInterval third{1, 0, 0.0, 1.0 / 3.0, 0.0, 1.0 / 3.0, 0.0, 0};
    CHECK(refine_midpoint(UnimodalMap::skew_tent(1.0 / 3.0), third) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  }
}

TEST_CASE("midpoint strategies agree where both run") {
  for (const auto& map : testutil::builtin_maps()) {
    for (double x : testutil::random_points(10, 21)) {
      const auto path = localize(map, x, 12);
      for (const auto& row : path.levels) {
        const double a = refine_midpoint(map, row, MidpointStrategy::Bisection);
        const double b = refine_midpoint(map, row, MidpointStrategy::Pullback);
        CHECK(std::fabs(a - b) <= 1e-10);
      }
    }
  }
}

TEST_CASE("delta ratios") {
  const auto tent = UnimodalMap::tent();
  for (const auto& row : localize(tent, 0.37, 10).levels)
    CHECK(delta_ratio(row) == doctest::Approx(0.5).epsilon(1e-12));

  const auto skew = UnimodalMap::skew_tent(1.0 / 3.0);
  const auto path = localize(skew, 0.2, 2);
  CHECK(path.levels[1].left == doctest::Approx(0.0));
  CHECK(path.levels[1].right == doctest::Approx(1.0 / 3.0));
  CHECK(delta_ratio(path.levels[1]) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const auto path_right = localize(skew, 0.9, 1);
  CHECK(delta_ratio(path_right.levels[1]) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  LocalizedInterval degenerate{5, 3, 0.25, 0.25, 0.25, 0.0, 0.0, 0};
  CHECK_THROWS_AS(delta_ratio(degenerate), std::runtime_error);
}

TEST_CASE("localization of 5/8 under the tent walks 1,2,4,9") {
  const auto path = localize(UnimodalMap::tent(), 0.625, 4);
  REQUIRE(path.depth == 4);
  CHECK(path.levels[1].index == 1);
  CHECK(path.levels[2].index == 2);
  CHECK(path.levels[3].index == 4);
  CHECK(path.levels[4].index == 9);
  CHECK(path.bit(1) == 1);
  CHECK(path.bit(2) == 0);
  CHECK(path.bit(3) == 0);
  CHECK(path.bit(4) == 1);
}

TEST_CASE("localization edges") {
  for (const auto& map : testutil::builtin_maps()) {
    const auto path = localize(map, 0.0, 10);
    for (const auto& row : path.levels) CHECK(row.index == 0);
  }
  const auto skew = UnimodalMap::skew_tent(1.0 / 3.0);
  const auto path = localize(skew, 1.0 / 3.0, 2);
  CHECK(path.levels[1].left == doctest::Approx(0.0));
  CHECK(path.levels[1].right == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(path.levels[1].length == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(path.levels[2].left == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(path.levels[2].length == doctest::Approx(2.0 / 9.0).epsilon(1e-15));

  CHECK_THROWS_AS(localize(skew, -0.5, 4), std::domain_error);
  CHECK_THROWS_AS(localize(skew, 0.5, 65), std::invalid_argument);
  CHECK(localize(skew, 0.5, 50).diagnostic != "");
}

TEST_CASE("paths agree with the full lattice") {
  for (const auto& map : testutil::builtin_maps()) {
    for (double x : testutil::random_points(8, 22)) {
      const auto path = localize(map, x, 10);
      for (const auto& row : path.levels) {
        const auto level = preimage_level(map, row.depth + 1);
        CHECK(std::fabs(row.left - level.points[row.index]) <= 1e-10);
        CHECK(std::fabs(row.right - level.points[row.index + 1]) <= 1e-10);
        const auto next = preimage_level(map, row.depth + 2);
        CHECK(std::fabs(row.midpoint - next.points[2 * row.index + 1]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("path invariants") {
  for (const auto& map : testutil::builtin_maps()) {
    for (double x : testutil::random_points(20, 23)) {
      const auto path = localize(map, x, 24);
      for (int n = 0; n <= path.depth; ++n) {
        const auto& row = path.levels[n];
        CHECK(row.left <= x + 1e-12);
        CHECK(x <= row.right + 1e-12);
        CHECK(std::fabs(row.midpoint - (row.left + row.delta * row.length)) <= 1e-14);
        if (n > 0) {
          const auto& prev = path.levels[n - 1];
          CHECK(row.index == 2 * prev.index + prev.next_bit);
          CHECK(row.length <= prev.length);
          CHECK(prev.left <= row.left);
          CHECK(row.right <= prev.right);
        }
      }
    }
  }
}

TEST_CASE("bisection walker matches the analytic walker") {
  for (const auto& map : testutil::builtin_maps()) {
    const auto twin = testutil::generic_twin(map);
    for (double x : {0.137, 0.62, 0.981}) {
      const auto a = localize(map, x, 10);
      const auto b = localize(twin, x, 10);
      REQUIRE(b.depth == a.depth);
      for (int n = 0; n <= a.depth; ++n) {
        CHECK(a.levels[n].index == b.levels[n].index);
        CHECK(std::fabs(a.levels[n].midpoint - b.levels[n].midpoint) <= 1e-10);
      }
    }
  }
}

TEST_CASE("index windows") {
  GDecomposition d{{0, 1, 0, 0, 1}};
  CHECK(index_window(d, 1, 4) == 9);
  CHECK(index_window(d, 0, 4) == 9);
  CHECK(index_window(d, 2, 4) == 1);
  for (int i = 1; i <= 4; ++i) CHECK(index_window(d, i, i) == d.bits[i]);
  GDecomposition zeros{{0, 0, 0, 0}};
  for (int i = 0; i <= 3; ++i)
    for (int j = i; j <= 3; ++j) CHECK(index_window(zeros, i, j) == 0);
  CHECK_THROWS_AS(index_window(d, 3, 2), std::out_of_range);
  CHECK_THROWS_AS(index_window(d, 0, 5), std::out_of_range);
}

TEST_CASE("lattice point addresses") {
  // mu_{2,1} is the critical point: digits 0,1,0,0,...
  const auto s21 = lattice_point_digits(2, 1, 8);
  CHECK(s21.bits == std::vector<std::uint8_t>{0, 1, 0, 0, 0, 0, 0, 0});
  // mu_{1,1} = 1: orbit 1, 0, 0, ...
  CHECK(lattice_point_digits(1, 1, 4).bits == std::vector<std::uint8_t>{1, 0, 0, 0});
  CHECK(lattice_point_digits(1, 0, 4).bits == std::vector<std::uint8_t>{0, 0, 0, 0});
  // reduction: mu_{4,4} = mu_{2,1}
  CHECK(lattice_point_digits(4, 4, 8).bits == s21.bits);

  // addresses reproduce the observed digit prefix on every built-in map
  for (const auto& map : testutil::builtin_maps()) {
    for (int n = 1; n <= 6; ++n) {
      const auto level = preimage_level(map, n);
      for (std::size_t k = 0; k < level.points.size(); ++k) {
        const auto address = lattice_point_digits(n, k, 12);
        const auto observed = digit_sequence(map, level.points[k], 12);
        CHECK(address.bits == observed.bits);
      }
    }
  }
}
