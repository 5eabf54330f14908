#include "levelpers/slab_complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "levelpers/error.hpp"

namespace levelpers {

namespace {

std::string format_value(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

/// The canonical cell carrying s ∩ {f = t}: the crossing polytope when s
/// has vertices on both sides of t, otherwise the face spanned by the
/// vertices at value t (if any).
std::optional<Cell> slice_cell(const VertexValuedMap& f, const Simplex& s, double t) {
  int below = 0;
  int above = 0;
  Simplex on_level;
  for (auto v : s) {
    const double x = f.value(v);
    if (x < t) {
      ++below;
    } else if (x > t) {
      ++above;
    } else {
      on_level.push_back(v);
    }
  }
  if (below > 0 && above > 0) return Cell{{s, Region::slice(t)}, simplex_dim(s) - 1};
  if (!on_level.empty()) return Cell{{on_level, Region::slice(t)}, simplex_dim(on_level)};
  return std::nullopt;
}

bool spans_slab(const VertexValuedMap& f, const Simplex& s, double lo, double hi) {
  return f.min_on(s) <= lo && f.max_on(s) >= hi;
}

class Builder {
 public:
  explicit Builder(const VertexValuedMap& f) : f_(f) {}

  void add_slice(double t) {
    for (const auto& s : f_.complex().simplices()) {
      auto c = slice_cell(f_, s, t);
      // Only cells carried by s itself; degenerate intersections belong to
      // a face and are added when that face is visited.
      if (!c || c->id.carrier != s) continue;
      std::set<CellId> bd;
      for (const auto& tau : facets(s)) {
        auto fc = slice_cell(f_, tau, t);
        if (fc && fc->dim == c->dim - 1) bd.insert(fc->id);
      }
      add(*c, std::move(bd));
    }
  }

  void add_slab(double lo, double hi) {
    for (const auto& s : f_.complex().simplices()) {
      if (s.size() < 2 || !spans_slab(f_, s, lo, hi)) continue;
      const Cell c{{s, Region::slab(lo, hi)}, simplex_dim(s)};
      std::set<CellId> bd;
      auto keep = [&](const std::optional<Cell>& fc) {
        if (fc && fc->dim == c.dim - 1) bd.insert(fc->id);
      };
      keep(slice_cell(f_, s, lo));
      keep(slice_cell(f_, s, hi));
      for (const auto& tau : facets(s)) {
        if (spans_slab(f_, tau, lo, hi) && tau.size() >= 2) {
          keep(Cell{{tau, Region::slab(lo, hi)}, simplex_dim(tau)});
        } else if (f_.max_on(tau) <= lo) {
          keep(slice_cell(f_, tau, lo));
        } else {
          keep(slice_cell(f_, tau, hi));
        }
      }
      add(c, std::move(bd));
    }
  }

  CellComplex finish(std::vector<double> slices) {
    std::vector<Cell> cells;
    std::vector<std::vector<CellId>> boundaries;
    cells.reserve(cells_.size());
    boundaries.reserve(cells_.size());
    for (auto& [key, entry] : cells_) {
      cells.push_back(Cell{key.second, key.first});
      boundaries.emplace_back(entry.begin(), entry.end());
    }
    CellComplex out(std::move(cells), std::move(boundaries), std::move(slices));
    validate(out);
    return out;
  }

 private:
  void add(const Cell& c, std::set<CellId> bd) { cells_.emplace(std::make_pair(c.dim, c.id), std::move(bd)); }

  const VertexValuedMap& f_;
  // Keyed by (dim, id) so storage order is deterministic and grouped by dim.
  std::map<std::pair<int, CellId>, std::set<CellId>> cells_;
};

}  // namespace

std::string to_string(const CellId& id) {
  std::ostringstream out;
  out << "carrier [";
  for (std::size_t i = 0; i < id.carrier.size(); ++i) out << (i ? "," : "") << id.carrier[i];
  out << "] ";
  if (id.region.is_slice()) {
    out << "slice " << format_value(id.region.lo);
  } else {
    out << "slab [" << format_value(id.region.lo) << ", " << format_value(id.region.hi) << "]";
  }
  return out.str();
}

CellComplex::CellComplex(std::vector<Cell> cells, std::vector<std::vector<CellId>> boundaries,
                         std::vector<double> slice_values)
    : cells_(std::move(cells)), slice_values_(std::move(slice_values)) {
  if (boundaries.size() != cells_.size()) throw MalformedComplex("cell complex: one boundary list per cell required");
  position_.resize(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const int d = cells_[i].dim;
    if (d < 0) throw MalformedComplex("cell complex: negative dimension for " + to_string(cells_[i].id));
    if (!index_.emplace(cells_[i].id, i).second) {
      throw MalformedComplex("cell complex: duplicate cell " + to_string(cells_[i].id));
    }
    if (static_cast<std::size_t>(d) >= by_dim_.size()) by_dim_.resize(static_cast<std::size_t>(d) + 1);
    position_[i] = by_dim_[static_cast<std::size_t>(d)].size();
    by_dim_[static_cast<std::size_t>(d)].push_back(i);
  }
  boundary_.resize(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (const auto& id : boundaries[i]) {
      auto it = index_.find(id);
      if (it == index_.end()) {
        throw MalformedComplex("cell complex: boundary of " + to_string(cells_[i].id) + " names unknown cell " +
                               to_string(id));
      }
      boundary_[i].push_back(it->second);
    }
  }
}

std::optional<std::size_t> CellComplex::find(const CellId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& CellComplex::cells_of_dim(int r) const {
  static const std::vector<std::size_t> kNone;
  if (r < 0 || static_cast<std::size_t>(r) >= by_dim_.size()) return kNone;
  return by_dim_[static_cast<std::size_t>(r)];
}

z2::BitMatrix CellComplex::boundary_matrix(int r) const {
  const auto& cols = cells_of_dim(r);
  z2::BitMatrix m(count(r - 1), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (auto b : boundary_[cols[j]]) {
      if (cells_[b].dim == r - 1) m.set(position_[b], j, !m.at(position_[b], j));
    }
  }
  return m;
}

long CellComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    chi += (d % 2 == 0 ? 1L : -1L) * static_cast<long>(by_dim_[d].size());
  }
  return chi;
}

void validate(const CellComplex& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Cell& cell = c.cell(i);
    std::map<std::size_t, int> second;  // codim-2 face -> parity
    for (auto b : c.boundary(i)) {
      if (c.cell(b).dim != cell.dim - 1) {
        throw MalformedComplex("validate: boundary of " + to_string(cell.id) + " contains " +
                               to_string(c.cell(b).id) + " of the wrong dimension");
      }
      for (auto bb : c.boundary(b)) second[bb] ^= 1;
    }
    for (const auto& [face, parity] : second) {
      if (parity != 0) {
        throw MalformedComplex("validate: boundary of boundary of " + to_string(cell.id) + " is nonzero at " +
                               to_string(c.cell(face).id));
      }
    }
  }
}

CellComplex level_complex(const VertexValuedMap& f, double t) {
  Builder b(f);
  b.add_slice(t);
  return b.finish({t});
}

CellComplex interlevel_complex(const VertexValuedMap& f, double a, double b, std::span<const double> extra_slices) {
  if (a > b) {
    throw InputError("interlevel_complex: lower end " + format_value(a) + " exceeds upper end " + format_value(b));
  }
  std::vector<double> slices{a, b};
  for (const auto& [v, x] : f.values()) {
    if (a < x && x < b) slices.push_back(x);
  }
  for (double x : extra_slices) {
    if (a < x && x < b) slices.push_back(x);
  }
  std::sort(slices.begin(), slices.end());
  slices.erase(std::unique(slices.begin(), slices.end()), slices.end());

  Builder builder(f);
  for (double s : slices) builder.add_slice(s);
  for (std::size_t k = 0; k + 1 < slices.size(); ++k) builder.add_slab(slices[k], slices[k + 1]);
  return builder.finish(std::move(slices));
}

z2::BitMatrix InclusionMap::chain_map(int r) const {
  const auto& src = source->cells_of_dim(r);
  z2::BitMatrix m(target->count(r), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) m.set(target->position_in_dim(cell_map[src[j]]), j);
  return m;
}

InclusionMap inclusion(std::shared_ptr<const CellComplex> source, std::shared_ptr<const CellComplex> target) {
  InclusionMap out{std::move(source), std::move(target), {}};
  const CellComplex& src = *out.source;
  const CellComplex& dst = *out.target;
  out.cell_map.resize(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto j = dst.find(src.cell(i).id);
    if (!j || dst.cell(*j).dim != src.cell(i).dim) {
      throw MalformedComplex("inclusion: " + to_string(src.cell(i).id) + " is not a cell of the target");
    }
    out.cell_map[i] = *j;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<std::size_t> mapped;
    for (auto b : src.boundary(i)) mapped.push_back(out.cell_map[b]);
    std::vector<std::size_t> expected = dst.boundary(out.cell_map[i]);
    std::sort(mapped.begin(), mapped.end());
    std::sort(expected.begin(), expected.end());
    if (mapped != expected) {
      throw MalformedComplex("inclusion: boundary of " + to_string(src.cell(i).id) + " does not commute");
    }
  }
  return out;
}

InclusionMap include_level(const VertexValuedMap& f, double t, double a, double b) {
  if (t != a && t != b) {
    throw InputError("include_level: level " + format_value(t) + " is not an end of [" + format_value(a) + ", " +
                     format_value(b) + "]");
  }
  return inclusion(std::make_shared<const CellComplex>(level_complex(f, t)),
                   std::make_shared<const CellComplex>(interlevel_complex(f, a, b)));
}

z2::HomologyPresentation homology_of(const CellComplex& c, int r) {
  return z2::homology_presentation(c.boundary_matrix(r + 1), c.boundary_matrix(r));
}

}  // namespace levelpers
