#pragma once

// Cell complexes for level sets f^-1(t) and interlevel sets f^-1([a, b]) of a
// vertex-valued PL map.
//
// A cell is a pair (carrier simplex, region). A Slice(s) cell is the polytope
// carrier ∩ {f = s}; a Slab(s, s') cell is carrier ∩ {s <= f <= s'} where no
// vertex value lies strictly between s and s'. The carrier is the unique
// simplex whose relative interior meets the region, so a level complex at t
// is literally the set of Slice(t) cells of any interlevel complex having t
// as a slice value, and inclusions are the identity on cell ids.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levelpers/complex.hpp"
#include "levelpers/z2_linalg.hpp"

namespace levelpers {

/// Slice(s) when lo == hi, Slab(lo, hi) when lo < hi.
struct Region {
  double lo = 0.0;
  double hi = 0.0;

  static Region slice(double s) { return {s, s}; }
  static Region slab(double s, double s2) { return {s, s2}; }
  bool is_slice() const { return lo == hi; }

  auto operator<=>(const Region&) const = default;
};

struct CellId {
  Simplex carrier;
  Region region;

  auto operator<=>(const CellId&) const = default;
};

std::string to_string(const CellId& id);

struct Cell {
  CellId id;
  int dim = 0;
};

class CellComplex {
 public:
  CellComplex() = default;
  /// Raw constructor; boundaries are given per cell as cell ids. Throws
  /// MalformedComplex if a boundary names an unknown cell. Performs no
  /// further validation (see validate()).
  CellComplex(std::vector<Cell> cells, std::vector<std::vector<CellId>> boundaries, std::vector<double> slice_values);

  std::size_t size() const { return cells_.size(); }
  const Cell& cell(std::size_t i) const { return cells_[i]; }
  const std::vector<std::size_t>& boundary(std::size_t i) const { return boundary_[i]; }
  const std::vector<double>& slice_values() const { return slice_values_; }
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

  std::optional<std::size_t> find(const CellId& id) const;
  /// Global indices of the cells of dimension r, in storage order.
  const std::vector<std::size_t>& cells_of_dim(int r) const;
  std::size_t count(int r) const { return cells_of_dim(r).size(); }
  std::size_t position_in_dim(std::size_t i) const { return position_[i]; }

  /// Matrix of the boundary C_r -> C_{r-1}.
  z2::BitMatrix boundary_matrix(int r) const;
  long euler_characteristic() const;

 private:
  std::vector<Cell> cells_;
  std::vector<std::vector<std::size_t>> boundary_;
  std::vector<double> slice_values_;
  std::map<CellId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::vector<std::size_t> position_;
};

/// Checks boundary dimensions and ∂∘∂ = 0; throws MalformedComplex naming the
/// first offending cell.
void validate(const CellComplex& c);

/// f^-1(t). Empty when t lies outside the range of f.
CellComplex level_complex(const VertexValuedMap& f, double t);

/// f^-1([a, b]) with slice values {a, b}, every vertex value strictly inside
/// (a, b), and any `extra_slices` strictly inside (a, b). Throws InputError
/// when a > b. With a == b the result equals level_complex(f, a).
CellComplex interlevel_complex(const VertexValuedMap& f, double a, double b,
                               std::span<const double> extra_slices = {});

struct InclusionMap {
  std::shared_ptr<const CellComplex> source;
  std::shared_ptr<const CellComplex> target;
  std::vector<std::size_t> cell_map;  // source index -> target index

  /// Chain map in degree r: target.count(r) x source.count(r).
  z2::BitMatrix chain_map(int r) const;
};

/// Identity-on-ids inclusion of one cell complex into another. Throws
/// MalformedComplex when a source cell is missing from the target or the
/// boundaries do not commute.
InclusionMap inclusion(std::shared_ptr<const CellComplex> source, std::shared_ptr<const CellComplex> target);

/// X_t into X_{a,b} for t in {a, b}.
InclusionMap include_level(const VertexValuedMap& f, double t, double a, double b);

z2::HomologyPresentation homology_of(const CellComplex& c, int r);

}  // namespace levelpers
