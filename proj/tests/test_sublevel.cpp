#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "levelpers/checks.hpp"
#include "levelpers/error.hpp"
#include "levelpers/sublevel.hpp"

using namespace levelpers;

namespace {

Count total(const SublevelBarcode& b) {
  Count n = 0;
  for (const auto& bar : b.bars()) n += bar.multiplicity;
  return n;
}

}  // namespace

TEST_CASE("square circle bars") {
  const auto b = sublevel_barcode(fixtures::circle());
  CHECK(b.mu(0, 0, b.infinity()) == 1);
  CHECK(b.mu(1, 2, b.infinity()) == 1);
  CHECK(b.mu(0, 1, 1) == 0);
  CHECK(total(b) == 2);
}

TEST_CASE("lambda bars") {
  const auto b = sublevel_barcode(fixtures::lambda());
  CHECK(b.mu(0, 0, b.infinity()) == 1);
  CHECK(b.mu(0, 1, 2) == 1);
  CHECK(total(b) == 2);
}

TEST_CASE("octahedron bars") {
  const auto b = sublevel_barcode(fixtures::octahedron());
  CHECK(b.mu(0, 0, b.infinity()) == 1);
  CHECK(b.mu(2, 2, b.infinity()) == 1);
  CHECK(total(b) == 2);
}

TEST_CASE("betti numbers from bars") {
  const auto b = sublevel_barcode(fixtures::lambda());
  // Two components in X_1, one in X_2, and the map X_1 -> X_2 has rank 1.
  CHECK(betti_from_bars(b, 0, 1, 1) == 2);
  CHECK(betti_from_bars(b, 0, 2, 2) == 1);
  CHECK(betti_from_bars(b, 0, 1, 2) == 1);
  CHECK(betti_from_bars(b, 0, 0.5, 0.5) == 1);
}

TEST_CASE("multiplicities recovered from betti numbers") {
  for (const auto& f : {fixtures::circle(), fixtures::lambda(), fixtures::octahedron()}) {
    const auto b = sublevel_barcode(f);
    CHECK(mu_from_betti(betti_table(b)) == b);
  }
  const auto point = fixtures::make({{0, 0}}, {{0}});
  const auto b = mu_from_betti(betti_table(sublevel_barcode(point)));
  CHECK(b.mu(0, 0, b.infinity()) == 1);
}

TEST_CASE("unrealizable betti table is rejected") {
  BettiTable beta(CriticalGrid({0, 1}), 1);
  beta.set_beta(0, 0, 0, 1);
  beta.set_beta(0, 0, 1, 2);
  CHECK_THROWS_AS(mu_from_betti(beta), UnrealizableNumbers);
}

TEST_CASE("random round trips and simplex bound") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = random_map(rng);
    const auto b = sublevel_barcode(f);
    CHECK(mu_from_betti(betti_table(b)) == b);
    // Bars born at t_i in degree r never outnumber the r-simplices entering there.
    const auto filt = lower_star_filtration(f);
    for (const auto& bar : b.bars()) {
      CHECK(bar.multiplicity > 0);
      Count entering = 0;
      for (const auto& e : filt) {
        if (simplex_dim(e.simplex) == bar.degree && e.value == b.grid().criticals()[bar.birth]) ++entering;
      }
      CHECK(bar.multiplicity <= entering);
    }
  }
}
