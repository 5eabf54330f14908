#include "levelpers/complex.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "levelpers/error.hpp"

namespace levelpers {

namespace {

std::string to_string(const Simplex& s) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << ']';
  return out.str();
}

void add_faces(const Simplex& s, std::set<Simplex, DimLexLess>& out) {
  const std::size_t n = s.size();
  // Every nonempty subset of the vertex set; n is tiny (<= dim + 1).
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) face.push_back(s[i]);
    }
    out.insert(std::move(face));
  }
}

}  // namespace

std::vector<Simplex> facets(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() < 2) return out;
  out.reserve(s.size());
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != drop) f.push_back(s[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<Simplex>& maximal_simplices) {
  std::set<Simplex, DimLexLess> all;
  for (const auto& raw : maximal_simplices) {
    if (raw.empty()) throw InputError("simplex with no vertices");
    if (raw.size() > 16) throw InputError("simplex " + to_string(raw) + " exceeds the supported dimension");
    Simplex s = raw;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InputError("simplex " + to_string(raw) + " repeats a vertex");
    }
    add_faces(s, all);
  }
  SimplicialComplex c;
  c.simplices_.assign(all.begin(), all.end());
  for (const auto& s : c.simplices_) {
    if (s.size() == 1) c.vertices_.push_back(s[0]);
  }
  return c;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s, DimLexLess{});
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  return std::all_of(simplices_.begin(), simplices_.end(), [&](const Simplex& s) { return other.contains(s); });
}

// ---------------------------------------------------------------------------

VertexValuedMap::VertexValuedMap(SimplicialComplex complex, std::map<VertexId, double> values)
    : complex_(std::move(complex)), values_(std::move(values)) {
  for (auto v : complex_.vertices()) {
    auto it = values_.find(v);
    if (it == values_.end()) throw InputError("vertex " + std::to_string(v) + " has no value");
    if (!std::isfinite(it->second)) throw InputError("vertex " + std::to_string(v) + " has a non-finite value");
  }
}

double VertexValuedMap::value(VertexId v) const { return values_.at(v); }

double VertexValuedMap::min_on(const Simplex& s) const {
  double m = value(s.front());
  for (auto v : s) m = std::min(m, value(v));
  return m;
}

double VertexValuedMap::max_on(const Simplex& s) const {
  double m = value(s.front());
  for (auto v : s) m = std::max(m, value(v));
  return m;
}

// ---------------------------------------------------------------------------

CriticalGrid::CriticalGrid(std::vector<double> criticals) : criticals_(std::move(criticals)) {
  if (!std::is_sorted(criticals_.begin(), criticals_.end()) ||
      std::adjacent_find(criticals_.begin(), criticals_.end()) != criticals_.end()) {
    throw InputError("critical values must be strictly increasing");
  }
  if (criticals_.empty()) return;
  regulars_.reserve(criticals_.size() + 1);
  regulars_.push_back(criticals_.front() - 1.0);
  for (std::size_t k = 0; k + 1 < criticals_.size(); ++k) {
    regulars_.push_back(criticals_[k] + (criticals_[k + 1] - criticals_[k]) / 2.0);
  }
  regulars_.push_back(criticals_.back() + 1.0);
}

std::vector<double> CriticalGrid::points() const {
  std::vector<double> out(point_count());
  for (std::size_t g = 0; g < out.size(); ++g) out[g] = point(g);
  return out;
}

std::size_t CriticalGrid::critical_index(double t) const {
  auto it = std::lower_bound(criticals_.begin(), criticals_.end(), t);
  if (it == criticals_.end() || *it != t) return npos;
  return static_cast<std::size_t>(it - criticals_.begin());
}

CriticalGrid critical_values(const VertexValuedMap& f) {
  if (f.complex().empty()) throw InputError("critical_values: the complex is empty");
  std::vector<double> vals;
  for (auto v : f.complex().vertices()) vals.push_back(f.value(v));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return CriticalGrid(std::move(vals));
}

std::vector<FiltrationEntry> lower_star_filtration(const VertexValuedMap& f) {
  std::vector<FiltrationEntry> out;
  out.reserve(f.complex().size());
  for (const auto& s : f.complex().simplices()) out.push_back({s, f.max_on(s)});
  // simplices() is already (dim, lex) ordered, so a stable sort by value
  // yields (value, dim, lex).
  std::stable_sort(out.begin(), out.end(),
                   [](const FiltrationEntry& a, const FiltrationEntry& b) { return a.value < b.value; });
  return out;
}

// ---------------------------------------------------------------------------

void validate(const Filtration& filt) {
  if (filt.stages.size() != filt.times.size()) {
    throw InputError("filtration: " + std::to_string(filt.stages.size()) + " stages but " +
                     std::to_string(filt.times.size()) + " times");
  }
  if (filt.stages.empty()) throw InputError("filtration: no stages");
  for (std::size_t i = 0; i < filt.times.size(); ++i) {
    if (!std::isfinite(filt.times[i])) throw InputError("filtration: time " + std::to_string(i) + " is not finite");
    if (i > 0 && !(filt.times[i - 1] < filt.times[i])) {
      throw InputError("filtration: times must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
  for (std::size_t i = 0; i + 1 < filt.stages.size(); ++i) {
    for (const auto& s : filt.stages[i].simplices()) {
      if (!filt.stages[i + 1].contains(s)) {
        throw InputError("filtration: simplex " + to_string(s) + " of stage " + std::to_string(i) +
                         " is missing from stage " + std::to_string(i + 1));
      }
    }
  }
}

VertexValuedMap telescope(const Filtration& filt) {
  validate(filt);
  const auto& top = filt.stages.back().vertices();
  if (top.empty()) return {};
  const auto stride = static_cast<VertexId>(top.size());
  auto copy_id = [&](VertexId v, std::size_t stage) {
    const auto rank = static_cast<VertexId>(std::lower_bound(top.begin(), top.end(), v) - top.begin());
    return static_cast<VertexId>(stage) * stride + rank;
  };

  std::vector<Simplex> generators;
  std::map<VertexId, double> values;
  const std::size_t n = filt.stages.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& s : filt.stages[i].simplices()) {
      Simplex level;
      for (auto v : s) {
        level.push_back(copy_id(v, i));
        values[copy_id(v, i)] = filt.times[i];
      }
      generators.push_back(level);
      if (i + 1 == n) continue;
      // Staircase: (v_0,i) .. (v_k,i), (v_k,i+1) .. (v_d,i+1) for k = 0..d.
      for (std::size_t k = 0; k < s.size(); ++k) {
        Simplex piece;
        for (std::size_t a = 0; a <= k; ++a) piece.push_back(copy_id(s[a], i));
        for (std::size_t a = k; a < s.size(); ++a) piece.push_back(copy_id(s[a], i + 1));
        for (auto v : piece) values[v] = filt.times[v / stride];
        generators.push_back(std::move(piece));
      }
    }
  }
  return VertexValuedMap(SimplicialComplex::from_maximal(generators), std::move(values));
}

}  // namespace levelpers
