#pragma once

// Sub-level persistence: barcodes of the lower-star filtration, Betti numbers
// of the maps H_r(X_{-inf,t}) -> H_r(X_{-inf,t'}) read off the bars, and the
// inverse inclusion-exclusion recovering bar multiplicities from them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "levelpers/complex.hpp"

namespace levelpers {

using Count = std::int64_t;

/// An r-bar [t_birth, t_death) or [t_birth, inf); endpoints are indices
/// into the critical values.
struct SublevelBar {
  int degree = 0;
  std::size_t birth = 0;
  std::optional<std::size_t> death;  // nullopt = infinity
  Count multiplicity = 0;

  auto operator<=>(const SublevelBar&) const = default;
};

/// Multiplicities mu_r(t_i, t_j) for i < j <= N and mu_r(t_i, inf), stored
/// with j = N + 1 standing for infinity.
class SublevelBarcode {
 public:
  SublevelBarcode() = default;
  SublevelBarcode(CriticalGrid grid, int degree_count);

  const CriticalGrid& grid() const { return grid_; }
  int degree_count() const { return degree_count_; }
  std::size_t infinity() const { return grid_.critical_count(); }

  /// j == infinity() addresses the infinite bar.
  Count mu(int r, std::size_t i, std::size_t j) const;
  void set_mu(int r, std::size_t i, std::size_t j, Count m);
  void add_mu(int r, std::size_t i, std::size_t j, Count m) { set_mu(r, i, j, mu(r, i, j) + m); }

  /// Nonzero entries sorted by (degree, birth, death) with infinity last.
  std::vector<SublevelBar> bars() const;

  /// Same grid and same nonzero bars (degree counts may differ).
  bool operator==(const SublevelBarcode& other) const;

 private:
  std::size_t offset(int r, std::size_t i, std::size_t j) const;

  CriticalGrid grid_;
  int degree_count_ = 0;
  std::vector<Count> mu_;
};

/// Column-reduces the lower-star filtration. Bars with equal birth and
/// death value are dropped. Degrees 0 .. dim X are reported.
SublevelBarcode sublevel_barcode(const VertexValuedMap& f);

/// Number of r-bars whose interval contains [t, t2]; t2 may be +infinity.
Count betti_from_bars(const SublevelBarcode& b, int r, double t, double t2);

/// beta_r(t_i, t_j) for i <= j <= N + 1, with N + 1 standing for infinity.
class BettiTable {
 public:
  BettiTable() = default;
  BettiTable(CriticalGrid grid, int degree_count);

  const CriticalGrid& grid() const { return grid_; }
  int degree_count() const { return degree_count_; }
  std::size_t infinity() const { return grid_.critical_count(); }

  Count beta(int r, std::size_t i, std::size_t j) const;
  void set_beta(int r, std::size_t i, std::size_t j, Count b);

 private:
  CriticalGrid grid_;
  int degree_count_ = 0;
  std::vector<Count> beta_;
};

BettiTable betti_table(const SublevelBarcode& b);

/// Four-case inclusion-exclusion from Betti numbers to multiplicities.
/// Throws UnrealizableNumbers if any multiplicity comes out negative.
SublevelBarcode mu_from_betti(const BettiTable& beta);

}  // namespace levelpers
