#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rvcplan/coloring.hpp"
#include "rvcplan/oracle.hpp"
#include "rvcplan/requirements.hpp"

namespace rvcplan {

/// Everything needed to plan a deployment: tenants in coloring order, their
/// relations, the functionality template and the functionality-level
/// requirements.
struct PlanningInstance {
  TenantRoster roster;
  TenantRelations relations;
  FunctionalityMap functionality_map;
  FunctionalityRequirementTable requirements{0, 0};
};

/// Grounded per-RVC requirement tables, the output of translation.
struct VariantRequirements {
  TenantRoster roster;
  std::vector<Rvc> rvcs;
  std::vector<VariantRequirementTable> tables;
};

VariantRequirements translate_instance(const PlanningInstance& instance);

struct OracleSummary {
  OracleStatus status = OracleStatus::kInconclusive;
  bool skipped = false;
  int h_star = 0;
  int lower_bound = 0;
  int upper_bound = 0;
  std::uint64_t explored = 0;

  friend bool operator==(const OracleSummary&, const OracleSummary&) = default;
};

/// "greedy-optimal", "greedy-suboptimal", "inconclusive" or "skipped".
std::string oracle_verdict(const OracleSummary& summary, int greedy_instances);

struct RvcPlan {
  Rvc rvc;
  VariantRequirementTable requirements;
  ColoringMatrix coloring;
  InstanceDistribution distribution;
  std::optional<OracleSummary> oracle;
};

struct DeploymentPlan {
  TenantRoster roster;
  std::vector<RvcPlan> rvcs;
};

struct SolveOptions {
  bool run_oracle = false;
  SearchBudget budget;
  /// Restrict solving to the RVC with this id.
  std::optional<std::string> only_rvc;
};

/// Sharing matrix -> conflict matrix -> greedy coloring for one RVC.
RvcPlan solve_rvc(const Rvc& rvc, const VariantRequirementTable& table, const SolveOptions& options = {});

/// Solves every RVC (or only `options.only_rvc`) in declaration order.
DeploymentPlan solve(const VariantRequirements& requirements, const SolveOptions& options = {});

/// Instance-by-variant tenant table per RVC; empty cells print as "----".
std::string format_distribution_table(const DeploymentPlan& plan);

}  // namespace rvcplan
