#include "rvcplan/plan.hpp"

#include <algorithm>
#include <sstream>

#include "rvcplan/conflict_graph.hpp"
#include "rvcplan/error.hpp"

namespace rvcplan {

VariantRequirements translate_instance(const PlanningInstance& instance) {
  return {instance.roster, instance.functionality_map.rvcs,
          translate(instance.requirements, instance.functionality_map, instance.relations)};
}

std::string oracle_verdict(const OracleSummary& summary, int greedy_instances) {
  if (summary.skipped) return "skipped";
  if (summary.status != OracleStatus::kOptimal) return "inconclusive";
  return greedy_instances == summary.h_star ? "greedy-optimal" : "greedy-suboptimal";
}

RvcPlan solve_rvc(const Rvc& rvc, const VariantRequirementTable& table, const SolveOptions& options) {
  if (table.variants() != rvc.variants.size()) throw DimensionError("requirement table does not match RVC " + rvc.id);

  const SharingMatrix sharing = build_sharing_matrix(table);
  ColoringMatrix d = color(invert(sharing));
  InstanceDistribution dist = distribution(d);

  std::optional<OracleSummary> summary;
  if (options.run_oracle) {
    summary.emplace();
    if (sharing.tenants() > options.budget.max_tenants) {
      summary->skipped = true;
    } else {
      const OracleResult r = exact_min_instances(sharing, options.budget);
      summary->status = r.status;
      summary->h_star = r.h_star;
      summary->lower_bound = r.lower_bound;
      summary->upper_bound = std::min(r.upper_bound, d.instances());
      summary->explored = r.explored;
    }
  }
  return {rvc, table, std::move(d), std::move(dist), summary};
}

DeploymentPlan solve(const VariantRequirements& requirements, const SolveOptions& options) {
  DeploymentPlan plan{requirements.roster, {}};
  bool matched = false;
  for (std::size_t r = 0; r < requirements.rvcs.size(); ++r) {
    const Rvc& rvc = requirements.rvcs[r];
    if (options.only_rvc && *options.only_rvc != rvc.id) continue;
    matched = true;
    plan.rvcs.push_back(solve_rvc(rvc, requirements.tables.at(r), options));
  }
  if (options.only_rvc && !matched) throw ReferenceError("unknown RVC '" + *options.only_rvc + "'");
  return plan;
}

namespace {

std::string join_labels(const TenantSet& tenants, const TenantRoster& roster) {
  if (tenants.empty()) return "----";
  std::string out;
  for (TenantIndex i : tenants) {
    if (!out.empty()) out += ", ";
    out += roster.label(i);
  }
  return out;
}

}  // namespace

std::string format_distribution_table(const DeploymentPlan& plan) {
  std::ostringstream os;
  for (const RvcPlan& p : plan.rvcs) {
    const int h = p.distribution.instances();
    os << p.rvc.id << ": " << h << (h == 1 ? " instance" : " instances");
    if (p.oracle) {
      os << " (oracle: " << oracle_verdict(*p.oracle, h);
      if (!p.oracle->skipped && p.oracle->status == OracleStatus::kOptimal) os << ", minimum " << p.oracle->h_star;
      os << ")";
    }
    os << "\n";

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Variant"});
    for (int c = 1; c <= h; ++c) rows.front().push_back("I" + std::to_string(c));
    for (std::size_t k = 0; k < p.rvc.variants.size(); ++k) {
      std::vector<std::string> row{p.rvc.variants[k]};
      for (int c = 1; c <= h; ++c)
        row.push_back(join_labels(p.distribution.tenants(c, static_cast<Eigen::Index>(k)), plan.roster));
      rows.push_back(std::move(row));
    }

    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
      std::string line = " ";
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += ' ';
        line += row[c];
        if (c + 1 < row.size()) line.append(width[c] - row[c].size() + 2, ' ');
      }
      os << line << "\n";
    }
  }
  return os.str();
}

}  // namespace rvcplan
