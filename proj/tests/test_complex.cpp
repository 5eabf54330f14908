#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "levelpers/checks.hpp"
#include "levelpers/error.hpp"
#include "levelpers/z2_linalg.hpp"

using namespace levelpers;

namespace {

// Betti numbers of a simplicial complex from ranks of its boundary matrices.
std::vector<std::size_t> simplicial_betti(const SimplicialComplex& k) {
  const int top = k.dimension();
  std::vector<std::vector<Simplex>> by_dim(static_cast<std::size_t>(top + 1));
  for (const auto& s : k.simplices()) by_dim[static_cast<std::size_t>(simplex_dim(s))].push_back(s);
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);
  for (int r = 1; r <= top; ++r) {
    const auto& rows = by_dim[static_cast<std::size_t>(r - 1)];
    const auto& cols = by_dim[static_cast<std::size_t>(r)];
    z2::BitMatrix d(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (const auto& face : facets(cols[c])) {
        d.set(static_cast<std::size_t>(std::find(rows.begin(), rows.end(), face) - rows.begin()), c);
      }
    }
    ranks[static_cast<std::size_t>(r)] = z2::rank(d);
  }
  std::vector<std::size_t> betti;
  for (int r = 0; r <= top; ++r) {
    betti.push_back(by_dim[static_cast<std::size_t>(r)].size() - ranks[static_cast<std::size_t>(r)] -
                    ranks[static_cast<std::size_t>(r + 1)]);
  }
  return betti;
}

std::vector<std::size_t> essential_counts(const SublevelBarcode& b, int degrees) {
  std::vector<std::size_t> out(static_cast<std::size_t>(degrees), 0);
  for (const auto& bar : b.bars()) {
    if (!bar.death && bar.degree < degrees) out[static_cast<std::size_t>(bar.degree)] += bar.multiplicity;
  }
  return out;
}

}  // namespace

TEST_CASE("closure of maximal simplices") {
  const auto circle = SimplicialComplex::from_maximal({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(circle.size() == 8);
  CHECK(circle.dimension() == 1);
  CHECK(circle.contains({0, 3}));
  CHECK(fixtures::octahedron().complex().size() == 26);
  CHECK(SimplicialComplex::from_maximal({}).empty());
  CHECK(SimplicialComplex::from_maximal({}).dimension() == -1);
}

TEST_CASE("closure is idempotent") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_map(rng);
    const auto& k = f.complex();
    CHECK(SimplicialComplex::from_maximal(k.simplices()) == k);
    for (const auto& s : k.simplices()) {
      for (const auto& face : facets(s)) CHECK(k.contains(face));
    }
  }
}

TEST_CASE("invalid simplices are rejected") {
  CHECK_THROWS_AS(SimplicialComplex::from_maximal({{0, 0}}), InputError);
  CHECK_THROWS_AS(SimplicialComplex::from_maximal({{}}), InputError);
  const auto k = SimplicialComplex::from_maximal({{0, 1}});
  CHECK_THROWS_AS(VertexValuedMap(k, {{0, 1.0}}), InputError);
  CHECK_THROWS_AS(VertexValuedMap(k, {{0, 1.0}, {1, std::numeric_limits<double>::infinity()}}), InputError);
}

TEST_CASE("critical grid interleaves") {
  const CriticalGrid grid({0, 1, 2});
  CHECK(grid.regulars() == std::vector<double>{-1, 0.5, 1.5, 3});
  CHECK(grid.point_count() == 7);
  const auto pts = grid.points();
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
  CHECK(grid.critical_index(1.0) == 1);
  CHECK(grid.critical_index(0.5) == CriticalGrid::npos);
  CHECK(critical_values(fixtures::circle()).criticals() == std::vector<double>{0, 1, 2});
  CHECK(critical_values(fixtures::octahedron()).criticals() == std::vector<double>{-1, 0, 1});
  CHECK_THROWS_AS(critical_values(VertexValuedMap()), InputError);
}

TEST_CASE("lower-star order of the square circle") {
  const auto filt = lower_star_filtration(fixtures::circle());
  std::vector<Simplex> order;
  for (const auto& e : filt) order.push_back(e.simplex);
  // a, b, d, ab, ad, c, bc, dc with a=0 b=1 c=2 d=3
  const std::vector<Simplex> expected{{0}, {1}, {3}, {0, 1}, {0, 3}, {2}, {1, 2}, {2, 3}};
  CHECK(order == expected);
}

TEST_CASE("lower-star order is a filtration") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_map(rng);
    const auto filt = lower_star_filtration(f);
    std::vector<Simplex> seen;
    for (std::size_t k = 0; k < filt.size(); ++k) {
      if (k > 0) CHECK(filt[k - 1].value <= filt[k].value);
      CHECK(filt[k].value == f.max_on(filt[k].simplex));
      for (const auto& face : facets(filt[k].simplex)) {
        CHECK(std::find(seen.begin(), seen.end(), face) != seen.end());
      }
      seen.push_back(filt[k].simplex);
    }
  }
}

TEST_CASE("filtration validation names the offender") {
  Filtration bad{{SimplicialComplex::from_maximal({{0, 1}}), SimplicialComplex::from_maximal({{1, 2}})}, {0, 1}};
  try {
    validate(bad);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("simplex [0] of stage 0") != std::string::npos);
  }
  Filtration times{{SimplicialComplex::from_maximal({{0}}), SimplicialComplex::from_maximal({{0}})}, {1, 1}};
  CHECK_THROWS_AS(validate(times), InputError);
}

TEST_CASE("telescope of two points into an edge") {
  const auto f = telescope(fixtures::two_points());
  const auto b = sublevel_barcode(f);
  CHECK(b.grid().criticals() == std::vector<double>{0, 1});
  CHECK(b.mu(0, 0, b.infinity()) == 1);
  CHECK(b.mu(0, 0, 1) == 1);
  CHECK(b.bars().size() == 2);
}

TEST_CASE("telescope of a circle into a disk") {
  const auto b = sublevel_barcode(telescope(fixtures::circle_into_disk()));
  CHECK(b.mu(1, 0, 1) == 1);
  CHECK(b.mu(0, 0, b.infinity()) == 1);
  CHECK(b.bars().size() == 2);
}

TEST_CASE("telescope has the homology of the last stage") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto top = random_map(rng, {8, 2, 5, 0.5}).complex();
    // An earlier stage: the closure of a subset of the maximal faces.
    std::vector<Simplex> some;
    for (const auto& s : top.simplices()) {
      if (rng() % 3 == 0) some.push_back(s);
    }
    const Filtration filt{{SimplicialComplex::from_maximal(some), top}, {0, 1}};
    const auto f = telescope(filt);
    const int degrees = top.dimension() + 1;
    const auto expected = simplicial_betti(top);
    CHECK(essential_counts(sublevel_barcode(f), degrees) == expected);
  }
}
