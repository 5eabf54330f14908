#pragma once

// Level persistence of a PL map f: X -> R.
//
// Two equivalent descriptions are kept here:
//  * LevelBarcode: the numbers of r-bars [t_i,t_j], (t_i,t_j), (t_i,t_j] and
//    [t_i,t_j) with endpoints at critical values;
//  * RelevantNumbers: the dimensions
//      l(t)        = dim H_r(X_t)
//      l+(t; t')   = dim ker(H_r(X_t) -> H_r(X_{t,t'}))
//      l-(t; t'')  = dim ker(H_r(X_t) -> H_r(X_{t'',t}))
//      e(t; t',t'') = dim of the intersection of those two kernels
//      i(t, t')    = dim(img H_r(X_t) ∩ img H_r(X_{t'})) inside H_r(X_{t,t'})
//    sampled on the critical grid (critical and regular values).
//
// compute_relevant_numbers() measures the numbers directly from level and
// interlevel cell complexes; the remaining functions convert between the two
// descriptions and down to sub-level bars.

#include <cstddef>
#include <string>
#include <vector>

#include "levelpers/complex.hpp"
#include "levelpers/sublevel.hpp"

namespace levelpers {

enum class BarKind { closed_closed, open_open, open_closed, closed_open };

inline constexpr BarKind kAllBarKinds[] = {BarKind::closed_closed, BarKind::open_open, BarKind::open_closed,
                                           BarKind::closed_open};

inline bool left_closed(BarKind k) { return k == BarKind::closed_closed || k == BarKind::closed_open; }
inline bool right_closed(BarKind k) { return k == BarKind::closed_closed || k == BarKind::open_closed; }
std::string to_string(BarKind k);

struct LevelBar {
  int degree = 0;
  std::size_t birth = 0;  // critical index of the left end
  std::size_t death = 0;  // critical index of the right end
  BarKind kind = BarKind::closed_closed;
  Count multiplicity = 0;

  auto operator<=>(const LevelBar&) const = default;
};

class LevelBarcode {
 public:
  LevelBarcode() = default;
  LevelBarcode(CriticalGrid grid, int degree_count);

  const CriticalGrid& grid() const { return grid_; }
  int degree_count() const { return degree_count_; }

  /// Zero for degrees or indices out of range (sentinel convention).
  Count count(int r, BarKind kind, std::ptrdiff_t i, std::ptrdiff_t j) const;
  void set(int r, BarKind kind, std::size_t i, std::size_t j, Count n);

  /// Nonzero entries sorted by (degree, birth, death, kind).
  std::vector<LevelBar> bars() const;
  bool has_negative() const;

  bool operator==(const LevelBarcode& other) const;

 private:
  std::size_t offset(int r, BarKind kind, std::size_t i, std::size_t j) const;

  CriticalGrid grid_;
  int degree_count_ = 0;
  std::vector<Count> counts_;
};

/// Tables indexed by grid points (see CriticalGrid); all entries whose
/// arguments violate the ordering constraints are zero.
class RelevantNumbers {
 public:
  RelevantNumbers() = default;
  RelevantNumbers(CriticalGrid grid, int degree_count);

  const CriticalGrid& grid() const { return grid_; }
  int degree_count() const { return degree_count_; }
  std::size_t point_count() const { return grid_.point_count(); }

  /// x <= y
  Count i(int r, std::size_t x, std::size_t y) const;
  Count l(int r, std::size_t x) const;
  /// x <= y
  Count lplus(int r, std::size_t x, std::size_t y) const;
  /// lower <= x
  Count lminus(int r, std::size_t x, std::size_t lower) const;
  /// lower <= x <= upper; zero otherwise.
  Count e(int r, std::size_t x, std::size_t upper, std::size_t lower) const;

  void set_i(int r, std::size_t x, std::size_t y, Count v);
  void set_l(int r, std::size_t x, Count v);
  void set_lplus(int r, std::size_t x, std::size_t y, Count v);
  void set_lminus(int r, std::size_t x, std::size_t lower, Count v);
  void set_e(int r, std::size_t x, std::size_t upper, std::size_t lower, Count v);

  bool operator==(const RelevantNumbers&) const = default;

 private:
  struct Tables {
    std::vector<Count> i, l, lplus, lminus, e;
    bool operator==(const Tables&) const = default;
  };
  std::size_t sq(std::size_t a, std::size_t b) const { return a * grid_.point_count() + b; }

  CriticalGrid grid_;
  int degree_count_ = 0;
  std::vector<Tables> tables_;
};

/// Direct computation from level/interlevel homology for degrees
/// 0 .. max_degree. A negative max_degree means dim X.
RelevantNumbers compute_relevant_numbers(const VertexValuedMap& f, int max_degree = -1);

/// Bar counts from the image-intersection numbers i alone. Throws
/// UnrealizableNumbers naming the formula when a count is negative.
LevelBarcode barcode_from_i(const RelevantNumbers& nums);

/// Bar counts from l, l+, l-, e (and i for the two-sided auxiliary counts).
/// Throws UnrealizableNumbers on any negative intermediate.
LevelBarcode barcode_from_llle(const RelevantNumbers& nums);

/// Counts intervals: i and l by containment, l+, l- and e by the open-end
/// sums.
RelevantNumbers relevant_from_barcode(const LevelBarcode& b);

/// mu_r(t_i,t_j) = N_r[t_i,t_j); mu_r(t_i,inf) = sum_l N_r[t_i,t_l] +
/// sum_{l<i} N_{r-1}(t_l,t_i). Produces degrees 0 .. degree_count.
SublevelBarcode sublevel_from_level(const LevelBarcode& b);

}  // namespace levelpers
