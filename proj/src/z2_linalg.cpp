#include "levelpers/z2_linalg.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "levelpers/error.hpp"

namespace levelpers::z2 {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

bool BitVector::test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

BitVector& BitVector::operator^=(const BitVector& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVector::none() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitVector::last_set() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) {
      return w * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(words_[w])));
    }
  }
  return npos;
}

std::vector<std::size_t> BitVector::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols, BitVector(rows)) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t nrows = rows.size();
  const std::size_t ncols = nrows == 0 ? 0 : rows.begin()->size();
  BitMatrix m(nrows, ncols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != ncols) throw MalformedComplex("from_rows: ragged row literal");
    std::size_t c = 0;
    for (int entry : row) m.set(r, c++, (entry & 1) != 0);
    ++r;
  }
  return m;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, std::vector<BitVector> columns) {
  for (const auto& c : columns) {
    if (c.size() != rows) throw MalformedComplex("from_columns: column length mismatch");
  }
  BitMatrix m;
  m.rows_ = rows;
  m.cols_ = std::move(columns);
  return m;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols(), rows_);
  for (std::size_t j = 0; j < cols(); ++j) {
    for (auto i : cols_[j].ones()) t.set(j, i);
  }
  return t;
}

BitVector BitMatrix::operator*(const BitVector& v) const {
  if (v.size() != cols()) throw MalformedComplex("matrix-vector product: shape mismatch");
  BitVector out(rows_);
  for (auto j : v.ones()) out ^= cols_[j];
  return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
  if (other.rows() != cols()) throw MalformedComplex("matrix product: shape mismatch");
  BitMatrix out(rows_, other.cols());
  for (std::size_t j = 0; j < other.cols(); ++j) out.cols_[j] = *this * other.cols_[j];
  return out;
}

bool BitMatrix::is_zero() const {
  for (const auto& c : cols_) {
    if (!c.none()) return false;
  }
  return true;
}

BitMatrix BitMatrix::hconcat(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows()) throw MalformedComplex("hconcat: row count mismatch");
  std::vector<BitVector> cols = a.cols_;
  cols.insert(cols.end(), b.cols_.begin(), b.cols_.end());
  return from_columns(a.rows(), std::move(cols));
}

// ---------------------------------------------------------------------------

Echelon::Echelon(std::size_t ambient_dim, std::size_t max_generators)
    : ambient_(ambient_dim), tags_(max_generators), pivot_owner_(ambient_dim, BitVector::npos) {}

std::pair<BitVector, BitVector> Echelon::reduce(const BitVector& v) const {
  BitVector residual = v;
  BitVector combo(tags_);
  for (std::size_t low = residual.last_set(); low != BitVector::npos; low = residual.last_set()) {
    const std::size_t owner = pivot_owner_[low];
    if (owner == BitVector::npos) break;
    residual ^= reduced_[owner];
    combo ^= combos_[owner];
  }
  return {std::move(residual), std::move(combo)};
}

bool Echelon::insert(const BitVector& v, std::size_t tag) {
  auto [residual, combo] = reduce(v);
  const std::size_t low = residual.last_set();
  if (low == BitVector::npos) return false;
  combo.flip(tag);
  pivot_owner_[low] = reduced_.size();
  reduced_.push_back(std::move(residual));
  combos_.push_back(std::move(combo));
  return true;
}

Subspace::Subspace(std::size_t ambient_dim) : basis_(ambient_dim, 0) {}

Subspace Subspace::span(const BitMatrix& generators) {
  Echelon ech(generators.rows(), generators.cols());
  std::vector<BitVector> kept;
  for (std::size_t j = 0; j < generators.cols(); ++j) {
    if (ech.insert(generators.column(j), j)) kept.push_back(generators.column(j));
  }
  Subspace s;
  s.basis_ = BitMatrix::from_columns(generators.rows(), std::move(kept));
  return s;
}

bool Subspace::contains(const BitVector& v) const {
  Echelon ech(ambient_dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) ech.insert(basis_.column(j), j);
  return ech.reduce(v).first.none();
}

// ---------------------------------------------------------------------------

std::size_t rank(const BitMatrix& m) {
  Echelon ech(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) ech.insert(m.column(j), j);
  return ech.rank();
}

Subspace kernel_basis(const BitMatrix& m) {
  // Column-reduce m while tracking combinations; every column that reduces
  // to zero contributes its combination as a kernel vector.
  Echelon ech(m.rows(), m.cols());
  std::vector<BitVector> kernel;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!ech.insert(m.column(j), j)) {
      BitVector combo = ech.reduce(m.column(j)).second;
      combo.flip(j);
      kernel.push_back(std::move(combo));
    }
  }
  return Subspace::span(BitMatrix::from_columns(m.cols(), std::move(kernel)));
}

Subspace image_basis(const BitMatrix& m) { return Subspace::span(m); }

std::size_t intersection_dim(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    std::ostringstream msg;
    msg << "intersection_dim: ambient dimensions differ (" << a.ambient_dim() << " vs " << b.ambient_dim() << ")";
    throw MalformedComplex(msg.str());
  }
  return a.dim() + b.dim() - rank(BitMatrix::hconcat(a.basis(), b.basis()));
}

// ---------------------------------------------------------------------------

HomologyPresentation homology_presentation(const BitMatrix& boundary_in, const BitMatrix& boundary_out) {
  const std::size_t n = boundary_in.rows();
  if (boundary_out.cols() != n) {
    std::ostringstream msg;
    msg << "homology_presentation: incoming boundary has " << n << " rows but outgoing boundary has "
        << boundary_out.cols() << " columns";
    throw MalformedComplex(msg.str());
  }
  if (!(boundary_out * boundary_in).is_zero()) {
    throw MalformedComplex("homology_presentation: boundary composition is nonzero");
  }

  HomologyPresentation h(n);
  h.cycles_ = kernel_basis(boundary_out);
  h.boundaries_ = image_basis(boundary_in);

  const std::size_t nb = h.boundaries_.dim();
  h.coords_ = Echelon(n, nb + h.cycles_.dim());
  for (std::size_t j = 0; j < nb; ++j) h.coords_.insert(h.boundaries_.basis().column(j), j);
  for (std::size_t j = 0; j < h.cycles_.dim(); ++j) {
    const BitVector& z = h.cycles_.basis().column(j);
    if (h.coords_.insert(z, nb + h.reps_.size())) h.reps_.push_back(z);
  }
  return h;
}

BitVector HomologyPresentation::coordinates(const BitVector& chain) const {
  if (chain.size() != ambient_dim()) throw MalformedComplex("coordinates: chain has wrong length");
  auto [residual, combo] = coords_.reduce(chain);
  if (!residual.none()) throw MalformedComplex("coordinates: chain is not a cycle");
  const std::size_t nb = boundaries_.dim();
  BitVector out(betti());
  for (auto tag : combo.ones()) {
    if (tag >= nb) out.set(tag - nb);
  }
  return out;
}

BitMatrix induced_map(const HomologyPresentation& src, const HomologyPresentation& dst, const BitMatrix& chain_map) {
  if (chain_map.cols() != src.ambient_dim() || chain_map.rows() != dst.ambient_dim()) {
    throw MalformedComplex("induced_map: chain map shape does not match the presentations");
  }
  const auto& b = src.boundaries().basis();
  for (std::size_t j = 0; j < b.cols(); ++j) {
    if (!dst.coordinates(chain_map * b.column(j)).none()) {
      throw MalformedComplex("induced_map: chain map sends a boundary to a nontrivial class");
    }
  }
  std::vector<BitVector> cols;
  cols.reserve(src.betti());
  for (const auto& rep : src.representatives()) cols.push_back(dst.coordinates(chain_map * rep));
  return BitMatrix::from_columns(dst.betti(), std::move(cols));
}

PersistencePairing column_reduce(const BitMatrix& ordered_boundary) {
  const std::size_t n = ordered_boundary.cols();
  if (ordered_boundary.rows() != n) throw MalformedComplex("column_reduce: boundary matrix must be square");

  PersistencePairing out;
  std::vector<BitVector> cols = ordered_boundary.columns();
  std::vector<std::size_t> owner(n, BitVector::npos);  // pivot row -> reduced column
  std::vector<bool> is_birth(n, false);

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t first_low = cols[j].last_set();
    if (first_low != BitVector::npos && first_low >= j) {
      std::ostringstream msg;
      msg << "column_reduce: column " << j << " has a nonzero entry in row " << first_low
          << ", violating the filtration order";
      throw MalformedComplex(msg.str());
    }
    for (std::size_t low = first_low; low != BitVector::npos; low = cols[j].last_set()) {
      if (owner[low] == BitVector::npos) {
        owner[low] = j;
        out.pairs.emplace_back(low, j);
        is_birth[low] = true;
        break;
      }
      cols[j] ^= cols[owner[low]];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (cols[j].none() && !is_birth[j]) out.essential.push_back(j);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

}  // namespace levelpers::z2
