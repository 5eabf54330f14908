#include "levelpers/sublevel.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "levelpers/error.hpp"
#include "levelpers/z2_linalg.hpp"

namespace levelpers {

SublevelBarcode::SublevelBarcode(CriticalGrid grid, int degree_count)
    : grid_(std::move(grid)), degree_count_(std::max(degree_count, 0)) {
  const std::size_t n = grid_.critical_count();
  mu_.assign(static_cast<std::size_t>(degree_count_) * n * (n + 1), 0);
}

std::size_t SublevelBarcode::offset(int r, std::size_t i, std::size_t j) const {
  const std::size_t n = grid_.critical_count();
  return (static_cast<std::size_t>(r) * n + i) * (n + 1) + j;
}

Count SublevelBarcode::mu(int r, std::size_t i, std::size_t j) const {
  if (r < 0 || r >= degree_count_) return 0;
  return mu_[offset(r, i, j)];
}

void SublevelBarcode::set_mu(int r, std::size_t i, std::size_t j, Count m) {
  if (r < 0) return;
  if (r >= degree_count_) {
    if (m == 0) return;
    SublevelBarcode grown(grid_, r + 1);
    std::copy(mu_.begin(), mu_.end(), grown.mu_.begin());
    *this = std::move(grown);
  }
  mu_[offset(r, i, j)] = m;
}

std::vector<SublevelBar> SublevelBarcode::bars() const {
  std::vector<SublevelBar> out;
  const std::size_t n = grid_.critical_count();
  for (int r = 0; r < degree_count_; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        const Count m = mu(r, i, j);
        if (m == 0) continue;
        SublevelBar bar{r, i, std::nullopt, m};
        if (j < n) bar.death = j;
        out.push_back(bar);
      }
    }
  }
  return out;
}

bool SublevelBarcode::operator==(const SublevelBarcode& other) const {
  return grid_ == other.grid_ && bars() == other.bars();
}

SublevelBarcode sublevel_barcode(const VertexValuedMap& f) {
  if (f.complex().empty()) return {};
  CriticalGrid grid = critical_values(f);
  SublevelBarcode out(grid, f.complex().dimension() + 1);

  const auto order = lower_star_filtration(f);
  std::map<Simplex, std::size_t, DimLexLess> position;
  for (std::size_t k = 0; k < order.size(); ++k) position.emplace(order[k].simplex, k);

  z2::BitMatrix boundary(order.size(), order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const auto& face : facets(order[k].simplex)) boundary.set(position.at(face), k);
  }
  const auto pairing = z2::column_reduce(boundary);

  auto critical = [&](std::size_t k) { return grid.critical_index(order[k].value); };
  for (const auto& [birth, death] : pairing.pairs) {
    if (order[birth].value == order[death].value) continue;
    out.add_mu(simplex_dim(order[birth].simplex), critical(birth), critical(death), 1);
  }
  for (auto k : pairing.essential) out.add_mu(simplex_dim(order[k].simplex), critical(k), out.infinity(), 1);
  return out;
}

Count betti_from_bars(const SublevelBarcode& b, int r, double t, double t2) {
  Count total = 0;
  const auto& crit = b.grid().criticals();
  for (const auto& bar : b.bars()) {
    if (bar.degree != r || crit[bar.birth] > t) continue;
    if (!bar.death || t2 < crit[*bar.death]) total += bar.multiplicity;
  }
  return total;
}

// ---------------------------------------------------------------------------

BettiTable::BettiTable(CriticalGrid grid, int degree_count)
    : grid_(std::move(grid)), degree_count_(std::max(degree_count, 0)) {
  const std::size_t n = grid_.critical_count();
  beta_.assign(static_cast<std::size_t>(degree_count_) * n * (n + 1), 0);
}

Count BettiTable::beta(int r, std::size_t i, std::size_t j) const {
  if (r < 0 || r >= degree_count_) return 0;
  const std::size_t n = grid_.critical_count();
  return beta_[(static_cast<std::size_t>(r) * n + i) * (n + 1) + j];
}

void BettiTable::set_beta(int r, std::size_t i, std::size_t j, Count b) {
  const std::size_t n = grid_.critical_count();
  beta_[(static_cast<std::size_t>(r) * n + i) * (n + 1) + j] = b;
}

BettiTable betti_table(const SublevelBarcode& b) {
  BettiTable out(b.grid(), b.degree_count());
  const auto& crit = b.grid().criticals();
  const std::size_t n = crit.size();
  for (int r = 0; r < b.degree_count(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        const double upper = j == n ? std::numeric_limits<double>::infinity() : crit[j];
        out.set_beta(r, i, j, betti_from_bars(b, r, crit[i], upper));
      }
    }
  }
  return out;
}

SublevelBarcode mu_from_betti(const BettiTable& beta) {
  const std::size_t n = beta.grid().critical_count();
  const std::size_t inf = n;
  SublevelBarcode out(beta.grid(), beta.degree_count());
  for (int r = 0; r < beta.degree_count(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        Count m = 0;
        if (j < inf && i > 0) {
          m = beta.beta(r, i, j - 1) - beta.beta(r, i - 1, j - 1) - beta.beta(r, i, j) + beta.beta(r, i - 1, j);
        } else if (j < inf) {
          m = beta.beta(r, 0, j - 1) - beta.beta(r, 0, j);
        } else if (i > 0) {
          m = beta.beta(r, i, inf) - beta.beta(r, i - 1, inf);
        } else {
          m = beta.beta(r, 0, inf);
        }
        if (m < 0) {
          std::ostringstream msg;
          msg << "mu_from_betti: negative multiplicity " << m << " for degree " << r << " bar (" << i << ", "
              << (j == inf ? std::string("inf") : std::to_string(j)) << ")";
          throw UnrealizableNumbers(msg.str());
        }
        out.set_mu(r, i, j, m);
      }
    }
  }
  return out;
}

}  // namespace levelpers
