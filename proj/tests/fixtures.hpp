#pragma once

// Desk-scale maps shared by the unit and acceptance tests.

#include <map>
#include <vector>

#include "levelpers/complex.hpp"

namespace fixtures {

inline levelpers::VertexValuedMap make(std::map<levelpers::VertexId, double> values,
                                       std::vector<levelpers::Simplex> maximal) {
  return levelpers::VertexValuedMap(levelpers::SimplicialComplex::from_maximal(maximal), std::move(values));
}

// a(0) - b(1)
inline levelpers::VertexValuedMap edge() { return make({{0, 0}, {1, 1}}, {{0, 1}}); }

// a(0), b(1), c(2), d(1) joined in a square
inline levelpers::VertexValuedMap circle() {
  return make({{0, 0}, {1, 1}, {2, 2}, {3, 1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// a(0) - b(2) - c(1)
inline levelpers::VertexValuedMap lambda() { return make({{0, 0}, {1, 2}, {2, 1}}, {{0, 1}, {1, 2}}); }

// a(2) - b(0) - c(1)
inline levelpers::VertexValuedMap vmap() { return make({{0, 2}, {1, 0}, {2, 1}}, {{0, 1}, {1, 2}}); }

// North 0 at height 1, south 1 at height -1, equator 2..5 at height 0.
inline levelpers::VertexValuedMap octahedron() {
  std::vector<levelpers::Simplex> tri;
  for (levelpers::VertexId k = 0; k < 4; ++k) {
    const levelpers::VertexId e = 2 + k;
    const levelpers::VertexId e2 = 2 + (k + 1) % 4;
    tri.push_back({0, e, e2});
    tri.push_back({1, e, e2});
  }
  return make({{0, 1}, {1, -1}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}, tri);
}

inline levelpers::Filtration two_points() {
  using levelpers::SimplicialComplex;
  return {{SimplicialComplex::from_maximal({{0}, {1}}), SimplicialComplex::from_maximal({{0, 1}})}, {0, 1}};
}

inline levelpers::Filtration circle_into_disk() {
  using levelpers::SimplicialComplex;
  return {{SimplicialComplex::from_maximal({{0, 1}, {1, 2}, {0, 2}}), SimplicialComplex::from_maximal({{0, 1, 2}})},
          {0, 1}};
}

}  // namespace fixtures
