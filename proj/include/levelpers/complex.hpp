#pragma once

// Finite simplicial complexes, vertex-valued piecewise-linear maps, their
// critical grids, lower-star filtrations and the telescope construction.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace levelpers {

using VertexId = std::int64_t;
/// Strictly increasing vertex ids; dimension is size() - 1.
using Simplex = std::vector<VertexId>;

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

/// Orders simplices by dimension first, then lexicographically.
struct DimLexLess {
  bool operator()(const Simplex& a, const Simplex& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Codimension-one faces of `s`, in the order obtained by dropping vertex
/// 0, 1, ... in turn.
std::vector<Simplex> facets(const Simplex& s);

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Face closure of the given simplices. Each tuple may be in any order but
  /// must not repeat a vertex (InputError otherwise).
  static SimplicialComplex from_maximal(const std::vector<Simplex>& maximal_simplices);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  /// All simplices sorted by (dimension, lexicographic).
  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }
  int dimension() const { return simplices_.empty() ? -1 : simplex_dim(simplices_.back()); }

  bool contains(const Simplex& s) const;
  bool is_subcomplex_of(const SimplicialComplex& other) const;

  bool operator==(const SimplicialComplex&) const = default;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Simplex> simplices_;
};

/// A simplicial complex with a real value on every vertex; the induced map
/// is linear on each simplex.
class VertexValuedMap {
 public:
  VertexValuedMap() = default;
  /// Throws InputError if a vertex lacks a value or a value is not finite.
  VertexValuedMap(SimplicialComplex complex, std::map<VertexId, double> values);

  const SimplicialComplex& complex() const { return complex_; }
  double value(VertexId v) const;
  const std::map<VertexId, double>& values() const { return values_; }

  double min_on(const Simplex& s) const;
  double max_on(const Simplex& s) const;

 private:
  SimplicialComplex complex_;
  std::map<VertexId, double> values_;
};

/// Critical values t_0 < ... < t_N interleaved with regular values
/// s_{-1} < t_0 < s_0 < ... < t_N < s_N.
///
/// Grid points are numbered 0 .. 2N+2: even indices are regular values,
/// odd indices are critical values (t_k sits at 2k+1).
class CriticalGrid {
 public:
  CriticalGrid() = default;
  explicit CriticalGrid(std::vector<double> criticals);

  const std::vector<double>& criticals() const { return criticals_; }
  /// s_{-1}, s_0, ..., s_N.
  const std::vector<double>& regulars() const { return regulars_; }
  std::size_t critical_count() const { return criticals_.size(); }

  std::size_t point_count() const { return criticals_.empty() ? 0 : 2 * criticals_.size() + 1; }
  double point(std::size_t g) const { return g % 2 == 1 ? criticals_[g / 2] : regulars_[g / 2]; }
  std::vector<double> points() const;
  bool is_critical_point(std::size_t g) const { return g % 2 == 1; }

  static std::size_t critical_point(std::size_t k) { return 2 * k + 1; }
  static std::size_t regular_below(std::size_t k) { return 2 * k; }
  static std::size_t regular_above(std::size_t k) { return 2 * k + 2; }

  /// Index k with criticals()[k] == t exactly, or npos.
  std::size_t critical_index(double t) const;

  bool operator==(const CriticalGrid&) const = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<double> criticals_;
  std::vector<double> regulars_;
};

/// Every distinct vertex value is treated as a critical value. Throws
/// InputError for a map on the empty complex.
CriticalGrid critical_values(const VertexValuedMap& f);

struct FiltrationEntry {
  Simplex simplex;
  double value;
};

/// Simplices ordered by (max vertex value, dimension, lexicographic).
std::vector<FiltrationEntry> lower_star_filtration(const VertexValuedMap& f);

struct Filtration {
  std::vector<SimplicialComplex> stages;
  std::vector<double> times;
};

/// Throws InputError if stages are not nested or times not increasing.
void validate(const Filtration& filt);

/// Triangulated mapping telescope K_0 x [t_0,t_1] U ... U K_N x {t_N}.
/// The copy of vertex v at stage i gets id i * V + rank(v), where V is the
/// vertex count of K_N and rank(v) the position of v among its vertices,
/// and takes value t_i. Prisms use the staircase triangulation.
VertexValuedMap telescope(const Filtration& filt);

}  // namespace levelpers
