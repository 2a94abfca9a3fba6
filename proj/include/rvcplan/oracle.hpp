#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rvcplan/coloring.hpp"
#include "rvcplan/conflict_graph.hpp"

namespace rvcplan {

/// Tenants i < j placed on the same instance c for variant k although they
/// may not share that variant.
struct Violation {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  Eigen::Index k = 0;
  int instance = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every violating pair, ordered by (k, i, j). Empty iff `d` is a valid
/// deployment for `sharing`.
std::vector<Violation> check_valid(const SharingMatrix& sharing, const ColoringMatrix& d);

struct SearchBudget {
  /// Instances with more tenants are not searched.
  Eigen::Index max_tenants = 10;
  /// Cap on visited search nodes.
  std::uint64_t max_nodes = 20'000'000;
};

enum class OracleStatus { kOptimal, kInconclusive };

struct OracleResult {
  OracleStatus status = OracleStatus::kInconclusive;
  /// Proven minimum; only meaningful when status is kOptimal.
  int h_star = 0;
  /// Proven bounds on the minimum. Equal to h_star when optimal.
  int lower_bound = 1;
  int upper_bound = 0;
  /// A coloring achieving upper_bound.
  std::optional<ColoringMatrix> witness;
  std::uint64_t explored = 0;
};

/// Exact minimum instance count (minimum clique cover of every per-variant
/// sharing graph, with one color pool across variants).
///
/// Candidate counts h = 1, 2, ... are refuted or confirmed by exhaustive
/// search over tenant sections, variant by variant. A section may only take a
/// color already present in its variant column or the next unused one, so each
/// column enumerates set partitions without color relabelings. Columns do not
/// constrain each other beyond the shared bound h, so a column that cannot be
/// completed within h colors refutes h outright.
///
/// Exhausting the budget yields kInconclusive with the bounds proven so far.
OracleResult exact_min_instances(const SharingMatrix& sharing, const SearchBudget& budget = {});

/// Random sharing matrix: each off-diagonal pair (i < j, k) is independently
/// forbidden with probability `density`. Reproducible from `seed` on every
/// platform. Throws std::invalid_argument on out-of-range parameters.
SharingMatrix gen_random_instance(Eigen::Index tenants, Eigen::Index variants, double density, std::uint64_t seed);

}  // namespace rvcplan
