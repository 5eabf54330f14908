#include "levelpers/checks.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "levelpers/error.hpp"
#include "levelpers/level.hpp"
#include "levelpers/slab_complex.hpp"
#include "levelpers/z2_linalg.hpp"

namespace levelpers {

namespace {

class Recorder {
 public:
  void fail(const std::string& name, const std::string& detail) {
    auto& r = entry(name);
    if (r.passed) r.detail = detail;
    r.passed = false;
  }
  void touch(const std::string& name) { entry(name); }
  std::vector<CheckResult> results() const { return results_; }

 private:
  CheckResult& entry(const std::string& name) {
    for (auto& r : results_) {
      if (r.name == name) return r;
    }
    results_.push_back({name, true, ""});
    return results_.back();
  }
  std::vector<CheckResult> results_;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::vector<std::size_t> betti_vector(const CellComplex& c, int degrees) {
  std::vector<std::size_t> out;
  for (int r = 0; r < degrees; ++r) out.push_back(homology_of(c, r).betti());
  return out;
}

/// Betti numbers of X_{a,b} and ranks of the maps from both end levels.
std::vector<std::size_t> interlevel_signature(const VertexValuedMap& f, double a, double b, int degrees,
                                              std::span<const double> extra) {
  auto lo = std::make_shared<const CellComplex>(level_complex(f, a));
  auto hi = std::make_shared<const CellComplex>(level_complex(f, b));
  auto slab = std::make_shared<const CellComplex>(interlevel_complex(f, a, b, extra));
  const auto from_lo = inclusion(lo, slab);
  const auto from_hi = inclusion(hi, slab);
  std::vector<std::size_t> sig;
  for (int r = 0; r < degrees; ++r) {
    const auto h = homology_of(*slab, r);
    const auto m_lo = z2::induced_map(homology_of(*lo, r), h, from_lo.chain_map(r));
    const auto m_hi = z2::induced_map(homology_of(*hi, r), h, from_hi.chain_map(r));
    sig.push_back(h.betti());
    sig.push_back(z2::rank(m_lo));
    sig.push_back(z2::rank(m_hi));
    sig.push_back(z2::intersection_dim(z2::image_basis(m_lo), z2::image_basis(m_hi)));
  }
  return sig;
}

void structural_checks(const VertexValuedMap& f, const CriticalGrid& grid, int degrees, Recorder& rec) {
  const auto pts = grid.points();
  const int all_degrees = std::max(f.complex().dimension() + 1, degrees);

  for (std::size_t x = 0; x < pts.size(); ++x) {
    try {
      const auto c = level_complex(f, pts[x]);
      long alternating = 0;
      const auto betti = betti_vector(c, all_degrees);
      for (std::size_t r = 0; r < betti.size(); ++r) {
        alternating += (r % 2 == 0 ? 1L : -1L) * static_cast<long>(betti[r]);
      }
      if (alternating != c.euler_characteristic()) {
        rec.fail("euler_characteristic", "level " + fmt(pts[x]) + ": cell count gives " +
                                             std::to_string(c.euler_characteristic()) + ", Betti numbers give " +
                                             std::to_string(alternating));
      }
    } catch (const MalformedComplex& e) {
      rec.fail("boundary_squared_zero", e.what());
    }
  }

  // Two different regular values in every gap (including beyond the ends).
  for (std::size_t k = 0; k < grid.regulars().size(); ++k) {
    const double s = grid.regulars()[k];
    const double other = k == 0 ? s - 0.5
                         : k + 1 == grid.regulars().size()
                             ? s + 0.5
                             : grid.criticals()[k - 1] + (grid.criticals()[k] - grid.criticals()[k - 1]) / 4.0;
    try {
      if (betti_vector(level_complex(f, s), all_degrees) != betti_vector(level_complex(f, other), all_degrees)) {
        rec.fail("same_gap_betti", "levels " + fmt(s) + " and " + fmt(other) + " differ");
      }
    } catch (const MalformedComplex& e) {
      rec.fail("boundary_squared_zero", e.what());
    }
  }

  for (std::size_t x = 0; x < pts.size(); ++x) {
    for (std::size_t y = x + 1; y < pts.size(); ++y) {
      try {
        const auto base = interlevel_complex(f, pts[x], pts[y]);
        const auto& slices = base.slice_values();
        const double extra = slices[0] + (slices[1] - slices[0]) / 2.0;
        const std::vector<double> extras{extra};
        if (interlevel_signature(f, pts[x], pts[y], degrees, {}) !=
            interlevel_signature(f, pts[x], pts[y], degrees, extras)) {
          rec.fail("refinement_independence",
                   "interlevel [" + fmt(pts[x]) + ", " + fmt(pts[y]) + "] changes with extra slice " + fmt(extra));
        }
      } catch (const MalformedComplex& e) {
        rec.fail("boundary_squared_zero", e.what());
      }
    }
  }
}

}  // namespace

SublevelBarcode restrict_degrees(const SublevelBarcode& b, int degree_count) {
  SublevelBarcode out(b.grid(), degree_count);
  for (const auto& bar : b.bars()) {
    if (bar.degree < degree_count) out.set_mu(bar.degree, bar.birth, bar.death.value_or(b.infinity()), bar.multiplicity);
  }
  return out;
}

std::vector<CheckResult> run_checks(const VertexValuedMap& f, int max_degree) {
  Recorder rec;
  for (const char* name : {"boundary_squared_zero", "euler_characteristic", "same_gap_betti", "refinement_independence",
                           "nonnegativity", "conversion_agreement", "numbers_round_trip", "betti_round_trip", "bridge",
                           "count_conservation"}) {
    rec.touch(name);
  }
  if (f.complex().empty()) return rec.results();

  const int dim = f.complex().dimension();
  if (max_degree < 0) max_degree = dim;
  const int degrees = max_degree + 1;
  const CriticalGrid grid = critical_values(f);

  structural_checks(f, grid, degrees, rec);

  RelevantNumbers nums;
  try {
    nums = compute_relevant_numbers(f, max_degree);
  } catch (const MalformedComplex& e) {
    rec.fail("boundary_squared_zero", e.what());
    return rec.results();
  }

  std::optional<LevelBarcode> from_i;
  std::optional<LevelBarcode> from_llle;
  try {
    from_i = barcode_from_i(nums);
  } catch (const UnrealizableNumbers& e) {
    rec.fail("nonnegativity", e.what());
  }
  try {
    from_llle = barcode_from_llle(nums);
  } catch (const UnrealizableNumbers& e) {
    rec.fail("nonnegativity", e.what());
  }
  if (from_i && from_llle && !(*from_i == *from_llle)) {
    rec.fail("conversion_agreement", "barcode from i differs from barcode from l, l+, l-, e");
  }

  const SublevelBarcode reduced = sublevel_barcode(f);
  try {
    const auto recovered = mu_from_betti(betti_table(reduced));
    if (!(recovered == reduced)) rec.fail("betti_round_trip", "mu_from_betti(betti_from_bars(B)) != B");
  } catch (const UnrealizableNumbers& e) {
    rec.fail("nonnegativity", e.what());
  }

  if (!from_i) return rec.results();

  if (!(relevant_from_barcode(*from_i) == nums)) {
    rec.fail("numbers_round_trip", "relevant numbers recomputed from the barcode differ from the direct ones");
  }

  // Degree max_degree + 1 of the bridge is complete only when no level
  // homology above max_degree was dropped.
  const int compared = max_degree >= dim ? degrees + 1 : degrees;
  const auto bridged = sublevel_from_level(*from_i);
  const auto bridged_bars = bridged.bars();
  if (std::any_of(bridged_bars.begin(), bridged_bars.end(), [](const SublevelBar& b) { return b.multiplicity < 0; })) {
    rec.fail("nonnegativity", "bridge produced a negative multiplicity");
  }
  if (!(restrict_degrees(bridged, compared) == restrict_degrees(reduced, compared))) {
    rec.fail("bridge", "sub-level bars from level bars differ from the column reduction");
  }

  const auto bars = from_i->bars();
  for (std::size_t k = 0; k < grid.regulars().size(); ++k) {
    const std::size_t x = CriticalGrid::regular_below(k);
    const double s = grid.point(x);
    for (int r = 0; r < degrees; ++r) {
      Count total = 0;
      for (const auto& bar : bars) {
        if (bar.degree != r) continue;
        const double lo = grid.criticals()[bar.birth];
        const double hi = grid.criticals()[bar.death];
        if (lo < s && s < hi) total += bar.multiplicity;
      }
      if (total != nums.l(r, x)) {
        rec.fail("count_conservation", "degree " + std::to_string(r) + " at regular value " + fmt(s) + ": bars " +
                                           std::to_string(total) + ", l " + std::to_string(nums.l(r, x)));
      }
    }
  }
  return rec.results();
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VertexValuedMap random_map(std::mt19937_64& rng, const RandomMapOptions& options) {
  std::uniform_int_distribution<int> vertex_count(2, std::max(2, options.max_vertices));
  std::uniform_int_distribution<int> generator_count(1, std::max(1, options.max_generators));
  std::uniform_int_distribution<int> simplex_dim(0, options.max_simplex_dim);
  std::bernoulli_distribution repeated(options.repeated_value_probability);

  const int nv = vertex_count(rng);
  std::vector<VertexId> ids(static_cast<std::size_t>(nv));
  std::iota(ids.begin(), ids.end(), 0);

  std::vector<Simplex> generators;
  const int ng = generator_count(rng);
  for (int k = 0; k < ng; ++k) {
    std::shuffle(ids.begin(), ids.end(), rng);
    const auto size = static_cast<std::size_t>(std::min(simplex_dim(rng) + 1, nv));
    generators.emplace_back(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(size));
  }
  auto complex = SimplicialComplex::from_maximal(generators);

  std::map<VertexId, double> values;
  if (repeated(rng)) {
    std::uniform_int_distribution<int> small(0, 3);
    for (auto v : complex.vertices()) values[v] = small(rng);
  } else {
    // Distinct tenths drawn without replacement.
    std::vector<int> pool(1000);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t next = 0;
    for (auto v : complex.vertices()) values[v] = pool[next++] / 10.0;
  }
  return VertexValuedMap(std::move(complex), std::move(values));
}

std::vector<CheckResult> run_random_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> folded;
  for (int k = 0; k < count; ++k) {
    const auto f = random_map(rng);
    for (const auto& c : run_checks(f)) {
      const std::string name = "random." + c.name;
      auto it = std::find_if(folded.begin(), folded.end(), [&](const CheckResult& r) { return r.name == name; });
      if (it == folded.end()) {
        folded.push_back({name, true, ""});
        it = std::prev(folded.end());
      }
      if (!c.passed && it->passed) {
        it->passed = false;
        it->detail = "instance " + std::to_string(k) + ": " + c.detail;
      }
    }
  }
  return folded;
}

}  // namespace levelpers
