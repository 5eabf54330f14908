#pragma once

// End-to-end invariant harness plus the random map generator that feeds the
// randomized suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "levelpers/complex.hpp"
#include "levelpers/sublevel.hpp"

namespace levelpers {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;

  bool operator==(const CheckResult&) const = default;
};

/// Runs every invariant on one map:
///   boundary_squared_zero, euler_characteristic, same_gap_betti,
///   refinement_independence, nonnegativity, conversion_agreement,
///   numbers_round_trip, betti_round_trip, bridge, count_conservation.
/// A negative max_degree means dim X.
std::vector<CheckResult> run_checks(const VertexValuedMap& f, int max_degree = -1);

/// Runs run_checks on `count` random maps and folds the results into one
/// entry per check name, prefixed with "random.".
std::vector<CheckResult> run_random_suite(std::uint64_t seed, int count);

bool all_passed(const std::vector<CheckResult>& checks);

struct RandomMapOptions {
  int max_vertices = 12;
  int max_simplex_dim = 3;
  int max_generators = 8;
  /// Probability of drawing values from a tiny integer range (forcing ties
  /// and f-constant simplices) instead of distinct decimals.
  double repeated_value_probability = 0.5;
};

VertexValuedMap random_map(std::mt19937_64& rng, const RandomMapOptions& options = {});

/// Keeps degrees 0 .. degree_count - 1.
SublevelBarcode restrict_degrees(const SublevelBarcode& b, int degree_count);

}  // namespace levelpers
