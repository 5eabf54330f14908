#pragma once

// Linear algebra over the two-element field.
//
// Vectors are bit-packed; matrices are stored column-major because every
// algorithm here (rank, kernel, persistence reduction) works by column
// operations. The pivot of a column is its lowest nonzero entry, i.e. the
// largest row index holding a one.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>

namespace levelpers::z2 {

class BitVector {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  BitVector() = default;
  explicit BitVector(std::size_t size);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool none() const;
  std::size_t count() const;
  /// Index of the highest set bit, or npos for the zero vector.
  std::size_t last_set() const;
  /// Indices of all set bits, ascending.
  std::vector<std::size_t> ones() const;

  bool operator==(const BitVector& other) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  /// Row-wise literal, handy in tests: from_rows({{1, 0}, {1, 1}}).
  static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static BitMatrix from_columns(std::size_t rows, std::vector<BitVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }

  bool at(std::size_t row, std::size_t col) const { return cols_[col].test(row); }
  void set(std::size_t row, std::size_t col, bool value = true) { cols_[col].set(row, value); }

  const BitVector& column(std::size_t j) const { return cols_[j]; }
  const std::vector<BitVector>& columns() const { return cols_; }

  BitMatrix transpose() const;
  BitVector operator*(const BitVector& v) const;
  BitMatrix operator*(const BitMatrix& other) const;
  bool is_zero() const;

  /// Horizontal concatenation [a | b]; row counts must agree.
  static BitMatrix hconcat(const BitMatrix& a, const BitMatrix& b);

  bool operator==(const BitMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<BitVector> cols_;
};

/// A linear subspace of Z2^ambient_dim held by an independent set of columns.
class Subspace {
 public:
  Subspace() = default;
  /// Zero subspace of the given ambient dimension.
  explicit Subspace(std::size_t ambient_dim);
  /// Span of arbitrary (possibly dependent) columns.
  static Subspace span(const BitMatrix& generators);

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const BitMatrix& basis() const { return basis_; }
  bool contains(const BitVector& v) const;

 private:
  BitMatrix basis_;
};

/// Incremental column echelon form with pivot = last set bit. Each stored
/// vector remembers which inserted generators it is a sum of, so membership
/// queries can also return coordinates.
class Echelon {
 public:
  explicit Echelon(std::size_t ambient_dim, std::size_t max_generators = 0);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return reduced_.size(); }

  /// Inserts `v` as generator number `tag`; returns false (and stores
  /// nothing) when `v` is already in the span.
  bool insert(const BitVector& v, std::size_t tag);
  /// Reduces `v` against the stored basis. Returns the residual and the set
  /// of generator tags whose sum equals `v - residual`.
  std::pair<BitVector, BitVector> reduce(const BitVector& v) const;

 private:
  std::size_t ambient_;
  std::size_t tags_;
  std::vector<BitVector> reduced_;
  std::vector<BitVector> combos_;
  std::vector<std::size_t> pivot_owner_;  // row -> index into reduced_, or npos
};

std::size_t rank(const BitMatrix& m);
Subspace kernel_basis(const BitMatrix& m);
Subspace image_basis(const BitMatrix& m);
/// dim(a ∩ b) = dim a + dim b - rank [a | b]. Throws MalformedComplex when the
/// ambient dimensions differ.
std::size_t intersection_dim(const Subspace& a, const Subspace& b);

/// H = ker(boundary_out) / img(boundary_in) for one degree of a chain complex.
class HomologyPresentation {
 public:
  std::size_t ambient_dim() const { return cycles_.ambient_dim(); }
  std::size_t betti() const { return reps_.size(); }
  const Subspace& cycles() const { return cycles_; }
  const Subspace& boundaries() const { return boundaries_; }
  const std::vector<BitVector>& representatives() const { return reps_; }

  /// Coordinates of a cycle in the representative basis. Throws
  /// MalformedComplex when `chain` is not a cycle.
  BitVector coordinates(const BitVector& chain) const;

 private:
  friend HomologyPresentation homology_presentation(const BitMatrix&, const BitMatrix&);
  explicit HomologyPresentation(std::size_t ambient) : cycles_(ambient), boundaries_(ambient), coords_(ambient) {}

  Subspace cycles_;
  Subspace boundaries_;
  std::vector<BitVector> reps_;
  Echelon coords_;  // boundary basis first (tags 0..b-1), then reps
};

/// `boundary_in` maps degree r+1 chains into degree r; `boundary_out` maps
/// degree r chains into degree r-1. Throws MalformedComplex when their
/// composition is nonzero or the shapes do not meet.
HomologyPresentation homology_presentation(const BitMatrix& boundary_in, const BitMatrix& boundary_out);

/// Matrix (dst.betti x src.betti) of the map on homology induced by a chain
/// map. Throws MalformedComplex if the chain map does not carry cycles to
/// cycles and boundaries to boundaries.
BitMatrix induced_map(const HomologyPresentation& src, const HomologyPresentation& dst, const BitMatrix& chain_map);

struct PersistencePairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (birth, death) column indices
  std::vector<std::size_t> essential;                      // unpaired positive columns

  bool operator==(const PersistencePairing&) const = default;
};

/// Standard column reduction of a filtered boundary matrix. Column j may
/// only have nonzero rows < j; otherwise MalformedComplex is thrown.
PersistencePairing column_reduce(const BitMatrix& ordered_boundary);

}  // namespace levelpers::z2
