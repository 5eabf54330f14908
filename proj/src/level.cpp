#include "levelpers/level.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "levelpers/error.hpp"
#include "levelpers/slab_complex.hpp"
#include "levelpers/z2_linalg.hpp"

namespace levelpers {

std::string to_string(BarKind k) {
  switch (k) {
    case BarKind::closed_closed:
      return "[]";
    case BarKind::open_open:
      return "()";
    case BarKind::open_closed:
      return "(]";
    case BarKind::closed_open:
      return "[)";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// LevelBarcode

LevelBarcode::LevelBarcode(CriticalGrid grid, int degree_count)
    : grid_(std::move(grid)), degree_count_(std::max(degree_count, 0)) {
  const std::size_t n = grid_.critical_count();
  counts_.assign(static_cast<std::size_t>(degree_count_) * 4 * n * n, 0);
}

std::size_t LevelBarcode::offset(int r, BarKind kind, std::size_t i, std::size_t j) const {
  const std::size_t n = grid_.critical_count();
  return ((static_cast<std::size_t>(r) * 4 + static_cast<std::size_t>(kind)) * n + i) * n + j;
}

Count LevelBarcode::count(int r, BarKind kind, std::ptrdiff_t i, std::ptrdiff_t j) const {
  const auto n = static_cast<std::ptrdiff_t>(grid_.critical_count());
  if (r < 0 || r >= degree_count_ || i < 0 || j < 0 || i >= n || j >= n) return 0;
  return counts_[offset(r, kind, static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
}

void LevelBarcode::set(int r, BarKind kind, std::size_t i, std::size_t j, Count n) {
  counts_.at(offset(r, kind, i, j)) = n;
}

std::vector<LevelBar> LevelBarcode::bars() const {
  std::vector<LevelBar> out;
  const std::size_t n = grid_.critical_count();
  for (int r = 0; r < degree_count_; ++r) {
    for (auto kind : kAllBarKinds) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          const Count m = count(r, kind, static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(j));
          if (m != 0) out.push_back({r, i, j, kind, m});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool LevelBarcode::has_negative() const {
  return std::any_of(counts_.begin(), counts_.end(), [](Count c) { return c < 0; });
}

bool LevelBarcode::operator==(const LevelBarcode& other) const {
  return grid_ == other.grid_ && bars() == other.bars();
}

// ---------------------------------------------------------------------------
// RelevantNumbers

RelevantNumbers::RelevantNumbers(CriticalGrid grid, int degree_count)
    : grid_(std::move(grid)), degree_count_(std::max(degree_count, 0)) {
  const std::size_t g = grid_.point_count();
  Tables t;
  t.i.assign(g * g, 0);
  t.l.assign(g, 0);
  t.lplus.assign(g * g, 0);
  t.lminus.assign(g * g, 0);
  t.e.assign(g * g * g, 0);
  tables_.assign(static_cast<std::size_t>(degree_count_), t);
}

Count RelevantNumbers::i(int r, std::size_t x, std::size_t y) const {
  if (r < 0 || r >= degree_count_ || x > y) return 0;
  return tables_[static_cast<std::size_t>(r)].i[sq(x, y)];
}

Count RelevantNumbers::l(int r, std::size_t x) const {
  if (r < 0 || r >= degree_count_) return 0;
  return tables_[static_cast<std::size_t>(r)].l[x];
}

Count RelevantNumbers::lplus(int r, std::size_t x, std::size_t y) const {
  if (r < 0 || r >= degree_count_ || x > y) return 0;
  return tables_[static_cast<std::size_t>(r)].lplus[sq(x, y)];
}

Count RelevantNumbers::lminus(int r, std::size_t x, std::size_t lower) const {
  if (r < 0 || r >= degree_count_ || lower > x) return 0;
  return tables_[static_cast<std::size_t>(r)].lminus[sq(x, lower)];
}

Count RelevantNumbers::e(int r, std::size_t x, std::size_t upper, std::size_t lower) const {
  if (r < 0 || r >= degree_count_ || lower > x || upper < x) return 0;
  const std::size_t g = grid_.point_count();
  return tables_[static_cast<std::size_t>(r)].e[(x * g + upper) * g + lower];
}

void RelevantNumbers::set_i(int r, std::size_t x, std::size_t y, Count v) {
  tables_.at(static_cast<std::size_t>(r)).i.at(sq(x, y)) = v;
}

void RelevantNumbers::set_l(int r, std::size_t x, Count v) { tables_.at(static_cast<std::size_t>(r)).l.at(x) = v; }

void RelevantNumbers::set_lplus(int r, std::size_t x, std::size_t y, Count v) {
  tables_.at(static_cast<std::size_t>(r)).lplus.at(sq(x, y)) = v;
}

void RelevantNumbers::set_lminus(int r, std::size_t x, std::size_t lower, Count v) {
  tables_.at(static_cast<std::size_t>(r)).lminus.at(sq(x, lower)) = v;
}

void RelevantNumbers::set_e(int r, std::size_t x, std::size_t upper, std::size_t lower, Count v) {
  const std::size_t g = grid_.point_count();
  tables_.at(static_cast<std::size_t>(r)).e.at((x * g + upper) * g + lower) = v;
}

// ---------------------------------------------------------------------------
// Direct computation

RelevantNumbers compute_relevant_numbers(const VertexValuedMap& f, int max_degree) {
  if (f.complex().empty()) return {};
  if (max_degree < 0) max_degree = f.complex().dimension();
  const int degrees = max_degree + 1;
  RelevantNumbers out(critical_values(f), degrees);
  const auto pts = out.grid().points();
  const std::size_t g = pts.size();

  std::vector<std::shared_ptr<const CellComplex>> levels;
  std::vector<std::vector<z2::HomologyPresentation>> level_h(g);
  std::vector<bool> level_empty(g, true);
  for (std::size_t x = 0; x < g; ++x) {
    levels.push_back(std::make_shared<const CellComplex>(level_complex(f, pts[x])));
    for (int r = 0; r < degrees; ++r) {
      level_h[x].push_back(homology_of(*levels[x], r));
      out.set_l(r, x, static_cast<Count>(level_h[x].back().betti()));
      out.set_i(r, x, x, static_cast<Count>(level_h[x].back().betti()));
      if (level_h[x].back().betti() != 0) level_empty[x] = false;
    }
  }

  // Kernels of H_r(X_x) into the interlevel set towards `other`, kept in the
  // coordinates of H_r(X_x) for the e-intersections.
  auto key = [&](int r, std::size_t x, std::size_t other) { return (static_cast<std::size_t>(r) * g + x) * g + other; };
  std::vector<z2::Subspace> up_kernel(static_cast<std::size_t>(degrees) * g * g);
  std::vector<z2::Subspace> down_kernel(static_cast<std::size_t>(degrees) * g * g);

  for (std::size_t x = 0; x < g; ++x) {
    for (std::size_t y = x + 1; y < g; ++y) {
      if (level_empty[x] && level_empty[y]) continue;
      auto slab = std::make_shared<const CellComplex>(interlevel_complex(f, pts[x], pts[y]));
      const InclusionMap from_lower = inclusion(levels[x], slab);
      const InclusionMap from_upper = inclusion(levels[y], slab);
      for (int r = 0; r < degrees; ++r) {
        const auto h = homology_of(*slab, r);
        const auto lower_map = z2::induced_map(level_h[x][static_cast<std::size_t>(r)], h, from_lower.chain_map(r));
        const auto upper_map = z2::induced_map(level_h[y][static_cast<std::size_t>(r)], h, from_upper.chain_map(r));
        out.set_i(r, x, y,
                  static_cast<Count>(z2::intersection_dim(z2::image_basis(lower_map), z2::image_basis(upper_map))));
        auto kp = z2::kernel_basis(lower_map);
        auto km = z2::kernel_basis(upper_map);
        out.set_lplus(r, x, y, static_cast<Count>(kp.dim()));
        out.set_lminus(r, y, x, static_cast<Count>(km.dim()));
        up_kernel[key(r, x, y)] = std::move(kp);
        down_kernel[key(r, y, x)] = std::move(km);
      }
    }
  }

  for (int r = 0; r < degrees; ++r) {
    for (std::size_t x = 0; x < g; ++x) {
      for (std::size_t upper = x + 1; upper < g; ++upper) {
        const auto& kp = up_kernel[key(r, x, upper)];
        if (kp.dim() == 0) continue;
        for (std::size_t lower = 0; lower < x; ++lower) {
          const auto& km = down_kernel[key(r, x, lower)];
          if (km.dim() == 0) continue;
          out.set_e(r, x, upper, lower, static_cast<Count>(z2::intersection_dim(kp, km)));
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conversions

namespace {

std::size_t crit(std::size_t k) { return CriticalGrid::critical_point(k); }
std::size_t below(std::size_t k) { return CriticalGrid::regular_below(k); }
std::size_t above(std::size_t k) { return CriticalGrid::regular_above(k); }

Count require_nonnegative(Count v, const char* what, int r, std::size_t i, std::size_t j) {
  if (v < 0) {
    std::ostringstream msg;
    msg << what << " is negative (" << v << ") for degree " << r << ", critical indices " << i << ", " << j;
    throw UnrealizableNumbers(msg.str());
  }
  return v;
}

bool contains_point(BarKind kind, double lo, double hi, double p) {
  const bool left_ok = left_closed(kind) ? lo <= p : lo < p;
  const bool right_ok = right_closed(kind) ? p <= hi : p < hi;
  return left_ok && right_ok;
}

}  // namespace

LevelBarcode barcode_from_i(const RelevantNumbers& nums) {
  const std::size_t n = nums.grid().critical_count();
  LevelBarcode out(nums.grid(), nums.degree_count());
  for (int r = 0; r < nums.degree_count(); ++r) {
    auto i = [&](std::size_t x, std::size_t y) { return nums.i(r, x, y); };
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = k; j < n; ++j) {
        const Count cc = i(crit(k), crit(j)) - i(below(k), crit(j)) - i(crit(k), above(j)) + i(below(k), above(j));
        out.set(r, BarKind::closed_closed, k, j, require_nonnegative(cc, "N[t_k,t_j] from i", r, k, j));
        if (j == k) continue;
        const Count oo = i(above(k), below(j)) - i(crit(k), below(j)) - i(above(k), crit(j)) + i(crit(k), crit(j));
        const Count oc = i(above(k), crit(j)) - i(crit(k), crit(j)) - i(above(k), above(j)) + i(crit(k), above(j));
        const Count co = i(crit(k), below(j)) - i(crit(k), crit(j)) - i(below(k), below(j)) + i(below(k), crit(j));
        out.set(r, BarKind::open_open, k, j, require_nonnegative(oo, "N(t_k,t_j) from i", r, k, j));
        out.set(r, BarKind::open_closed, k, j, require_nonnegative(oc, "N(t_k,t_j] from i", r, k, j));
        out.set(r, BarKind::closed_open, k, j, require_nonnegative(co, "N[t_k,t_j) from i", r, k, j));
      }
    }
  }
  return out;
}

LevelBarcode barcode_from_llle(const RelevantNumbers& nums) {
  const auto n = static_cast<std::ptrdiff_t>(nums.grid().critical_count());
  LevelBarcode out(nums.grid(), nums.degree_count());
  auto in_range = [&](std::ptrdiff_t k) { return k >= 0 && k < n; };
  auto uz = [](std::ptrdiff_t k) { return static_cast<std::size_t>(k); };

  for (int r = 0; r < nums.degree_count(); ++r) {
    // Open-open bars from e, probing at the regular value just above t_k.
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const std::size_t probe = above(uz(k));
      for (std::ptrdiff_t j = k + 1; j < n; ++j) {
        const Count v = nums.e(r, probe, crit(uz(j)), crit(uz(k))) - nums.e(r, probe, crit(uz(j)), crit(uz(k + 1))) -
                        nums.e(r, probe, crit(uz(j - 1)), crit(uz(k))) +
                        nums.e(r, probe, crit(uz(j - 1)), crit(uz(k + 1)));
        out.set(r, BarKind::open_open, uz(k), uz(j), require_nonnegative(v, "N(t_k,t_j) from e", r, uz(k), uz(j)));
      }
    }

    // Auxiliary counts; out-of-range indices are the zero sentinels.
    // n{t_i,t_j): bars meeting X_{t_i} with open right end at t_j.
    auto meets_open_right = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> Count {
      if (!in_range(i) || !in_range(j) || j <= i) return 0;
      const Count v = nums.lplus(r, crit(uz(i)), crit(uz(j))) - nums.lplus(r, crit(uz(i)), crit(uz(j - 1)));
      return require_nonnegative(v, "n{t_i,t_j)", r, uz(i), uz(j));
    };
    // n(t_i,t_j}: bars meeting X_{t_j} with open left end at t_i.
    auto meets_open_left = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> Count {
      if (!in_range(i) || !in_range(j) || j <= i) return 0;
      const Count v = nums.lminus(r, crit(uz(j)), crit(uz(i))) - nums.lminus(r, crit(uz(j)), crit(uz(i + 1)));
      return require_nonnegative(v, "n(t_i,t_j}", r, uz(i), uz(j));
    };
    // n{t_i,t_j}: bars meeting both levels.
    auto meets_both = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> Count {
      if (!in_range(i) || !in_range(j) || j < i) return 0;
      return nums.i(r, crit(uz(i)), crit(uz(j)));
    };
    // n[t_i,t_j}: bars meeting X_{t_j} with closed left end at t_i.
    auto meets_closed_left = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> Count {
      if (!in_range(i) || !in_range(j) || j < i) return 0;
      const Count v = meets_both(i, j) - meets_both(i - 1, j) - meets_open_left(i - 1, j);
      return require_nonnegative(v, "n[t_i,t_j}", r, uz(i), uz(j));
    };

    // (t_i, t_j]: j descending so N(t_i, t_{j+1}) is read from finished rows.
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      for (std::ptrdiff_t j = n - 1; j > i; --j) {
        const Count v =
            meets_open_left(i, j) - meets_open_left(i, j + 1) - out.count(r, BarKind::open_open, i, j + 1);
        out.set(r, BarKind::open_closed, uz(i), uz(j), require_nonnegative(v, "N(t_i,t_j] from l-", r, uz(i), uz(j)));
      }
    }
    // [t_i, t_j): i ascending.
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      for (std::ptrdiff_t j = i + 1; j < n; ++j) {
        const Count v =
            meets_open_right(i, j) - meets_open_right(i - 1, j) - out.count(r, BarKind::open_open, i - 1, j);
        out.set(r, BarKind::closed_open, uz(i), uz(j), require_nonnegative(v, "N[t_i,t_j) from l+", r, uz(i), uz(j)));
      }
    }
    // [t_i, t_j]: j descending.
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      for (std::ptrdiff_t j = n - 1; j >= i; --j) {
        const Count v =
            meets_closed_left(i, j) - meets_closed_left(i, j + 1) - out.count(r, BarKind::closed_open, i, j + 1);
        out.set(r, BarKind::closed_closed, uz(i), uz(j),
                require_nonnegative(v, "N[t_i,t_j] from n[", r, uz(i), uz(j)));
      }
    }
  }
  return out;
}

RelevantNumbers relevant_from_barcode(const LevelBarcode& b) {
  RelevantNumbers out(b.grid(), b.degree_count());
  const auto pts = b.grid().points();
  const auto& crit_values = b.grid().criticals();
  const std::size_t g = pts.size();
  const auto bars = b.bars();

  for (const auto& bar : bars) {
    const int r = bar.degree;
    const double lo = crit_values[bar.birth];
    const double hi = crit_values[bar.death];
    const Count m = bar.multiplicity;
    for (std::size_t x = 0; x < g; ++x) {
      if (!contains_point(bar.kind, lo, hi, pts[x])) continue;
      out.set_l(r, x, out.l(r, x) + m);
      for (std::size_t y = x; y < g; ++y) {
        if (contains_point(bar.kind, lo, hi, pts[y])) out.set_i(r, x, y, out.i(r, x, y) + m);
      }

      // Bars containing x that die upward at t_j <= y.
      if (!right_closed(bar.kind)) {
        for (std::size_t y = x; y < g; ++y) {
          if (hi <= pts[y]) out.set_lplus(r, x, y, out.lplus(r, x, y) + m);
        }
      }
      // Bars containing x that die downward at t_i >= lower.
      if (!left_closed(bar.kind)) {
        for (std::size_t lower = 0; lower <= x; ++lower) {
          if (pts[lower] <= lo) out.set_lminus(r, x, lower, out.lminus(r, x, lower) + m);
        }
      }
      if (bar.kind == BarKind::open_open) {
        for (std::size_t upper = x; upper < g; ++upper) {
          if (!(hi <= pts[upper])) continue;
          for (std::size_t lower = 0; lower <= x; ++lower) {
            if (pts[lower] <= lo) out.set_e(r, x, upper, lower, out.e(r, x, upper, lower) + m);
          }
        }
      }
    }
  }
  return out;
}

SublevelBarcode sublevel_from_level(const LevelBarcode& b) {
  const std::size_t n = b.grid().critical_count();
  SublevelBarcode out(b.grid(), b.degree_count() + 1);
  for (int r = 0; r <= b.degree_count(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto si = static_cast<std::ptrdiff_t>(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        out.set_mu(r, i, j, b.count(r, BarKind::closed_open, si, static_cast<std::ptrdiff_t>(j)));
      }
      Count essential = 0;
      for (std::size_t l = i; l < n; ++l) essential += b.count(r, BarKind::closed_closed, si, static_cast<std::ptrdiff_t>(l));
      for (std::size_t l = 0; l < i; ++l) essential += b.count(r - 1, BarKind::open_open, static_cast<std::ptrdiff_t>(l), si);
      out.set_mu(r, i, out.infinity(), essential);
    }
  }
  return out;
}

}  // namespace levelpers
