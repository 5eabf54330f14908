#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "levelpers/checks.hpp"
#include "levelpers/error.hpp"
#include "levelpers/level.hpp"

using namespace levelpers;

namespace {

std::size_t c(std::size_t k) { return CriticalGrid::critical_point(k); }

Count total(const LevelBarcode& b) {
  Count n = 0;
  for (const auto& bar : b.bars()) n += bar.multiplicity;
  return n;
}

}  // namespace

TEST_CASE("interval edge numbers") {
  const auto nums = compute_relevant_numbers(fixtures::edge());
  const std::size_t n = nums.point_count();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      // Grid points 1..3 lie in [0, 1]; the sentinels have empty levels.
      const bool inside = x >= 1 && y <= 3;
      CHECK(nums.i(0, x, y) == (inside ? 1 : 0));
      CHECK(nums.lplus(0, x, y) == 0);
      CHECK(nums.lminus(0, y, x) == 0);
    }
  }
  const auto b = barcode_from_i(nums);
  CHECK(b.count(0, BarKind::closed_closed, 0, 1) == 1);
  CHECK(total(b) == 1);
}

TEST_CASE("square circle level bars") {
  const auto b = barcode_from_i(compute_relevant_numbers(fixtures::circle()));
  CHECK(b.count(0, BarKind::closed_closed, 0, 2) == 1);
  CHECK(b.count(0, BarKind::open_open, 0, 2) == 1);
  CHECK(total(b) == 2);
}

TEST_CASE("square circle relevant numbers") {
  const auto nums = compute_relevant_numbers(fixtures::circle());
  CHECK(nums.l(0, c(1)) == 2);
  CHECK(nums.l(0, 2) == 2);
  // X_{0.5,1.5} is two arcs, each meeting both end levels.
  CHECK(nums.i(0, 2, 4) == 2);
  // Both points of a middle level die downward at 0 and upward at 2 together.
  CHECK(nums.lplus(0, 2, c(2)) == 1);
  CHECK(nums.lminus(0, 2, c(0)) == 1);
}

TEST_CASE("octahedron level bars") {
  const auto b = barcode_from_i(compute_relevant_numbers(fixtures::octahedron()));
  CHECK(b.count(0, BarKind::closed_closed, 0, 2) == 1);
  CHECK(b.count(1, BarKind::open_open, 0, 2) == 1);
  CHECK(total(b) == 2);
}

TEST_CASE("lambda and V level bars") {
  const auto lam = barcode_from_i(compute_relevant_numbers(fixtures::lambda()));
  CHECK(lam.count(0, BarKind::closed_closed, 0, 2) == 1);
  CHECK(lam.count(0, BarKind::closed_open, 1, 2) == 1);
  CHECK(total(lam) == 2);
  const auto v = barcode_from_i(compute_relevant_numbers(fixtures::vmap()));
  CHECK(v.count(0, BarKind::closed_closed, 0, 2) == 1);
  CHECK(v.count(0, BarKind::open_closed, 0, 1) == 1);
  CHECK(total(v) == 2);
}

TEST_CASE("telescope level bars") {
  const auto b = barcode_from_i(compute_relevant_numbers(telescope(fixtures::two_points())));
  CHECK(b.count(0, BarKind::closed_closed, 0, 1) == 1);
  CHECK(b.count(0, BarKind::closed_open, 0, 1) == 1);
  CHECK(total(b) == 2);
}

TEST_CASE("bridge on the fixtures") {
  for (const auto& f : {fixtures::edge(), fixtures::circle(), fixtures::lambda(), fixtures::vmap(),
                        fixtures::octahedron(), telescope(fixtures::two_points())}) {
    const auto bridged = sublevel_from_level(barcode_from_i(compute_relevant_numbers(f)));
    CHECK(bridged == sublevel_barcode(f));
  }
}

TEST_CASE("both conversions agree and invert") {
  for (const auto& f : {fixtures::circle(), fixtures::lambda(), fixtures::vmap(), fixtures::octahedron()}) {
    const auto nums = compute_relevant_numbers(f);
    const auto b = barcode_from_i(nums);
    CHECK(b == barcode_from_llle(nums));
    CHECK(relevant_from_barcode(b) == nums);
  }
}

TEST_CASE("hand-made barcode survives the round trip") {
  LevelBarcode b(CriticalGrid({0, 1, 2, 3}), 2);
  b.set(0, BarKind::closed_closed, 0, 3, 1);
  b.set(0, BarKind::open_closed, 1, 2, 2);
  b.set(0, BarKind::closed_open, 1, 3, 1);
  b.set(1, BarKind::open_open, 0, 3, 1);
  b.set(1, BarKind::closed_closed, 2, 2, 1);
  const auto nums = relevant_from_barcode(b);
  CHECK(barcode_from_i(nums) == b);
  CHECK(barcode_from_llle(nums) == b);
}

TEST_CASE("unrealizable numbers are rejected") {
  // The circle's numbers with one image rank lowered.
  auto nums = compute_relevant_numbers(fixtures::circle());
  REQUIRE(nums.i(0, c(0), c(1)) == 1);
  nums.set_i(0, c(0), c(1), 0);
  CHECK_THROWS_AS(barcode_from_i(nums), UnrealizableNumbers);
}

TEST_CASE("random maps satisfy every check") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_map(rng);
    for (const auto& r : run_checks(f)) {
      INFO(r.name << ": " << r.detail);
      CHECK(r.passed);
    }
  }
}
