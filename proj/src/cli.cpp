#include "rvcplan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "rvcplan/conflict_graph.hpp"
#include "rvcplan/documents.hpp"
#include "rvcplan/oracle.hpp"
#include "rvcplan/plan.hpp"

namespace rvcplan::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string input;
  std::string output = "-";

  // solve
  bool emit_graphs = false;
  std::string graph_dir;
  bool oracle = false;
  std::uint64_t oracle_budget = SearchBudget{}.max_nodes;
  Eigen::Index oracle_max_tenants = SearchBudget{}.max_tenants;
  std::string rvc;

  // check
  std::string plan;

  // gen
  Eigen::Index tenants = 0;
  Eigen::Index variants = 0;
  double density = -1.0;
  std::uint64_t seed = 0;
};

/// Prefixes document errors raised while reading `path` with the file name.
template <typename Fn>
auto from_file(const std::string& path, Fn&& fn) -> decltype(fn(std::declval<const Document&>())) {
  const Document doc = load_json_file(path);
  try {
    return fn(doc);
  } catch (const ReferenceError& e) {
    throw ReferenceError(path + ": " + e.what());
  } catch (const Error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError(path + ": cannot open file for writing");
  file << text;
  if (!file) throw ParseError(path + ": write failed");
}

int cmd_translate(const Options& opt, std::ostream& out) {
  const VariantRequirements reqs = from_file(opt.input, [](const auto& doc) { return translate_instance(read_instance(doc)); });
  write_text(opt.output, dump_document(write_variant_requirements(reqs)), out);
  return kExitOk;
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
  const VariantRequirements reqs = from_file(opt.input, [](const auto& doc) { return read_requirements_source(doc); });

  SolveOptions so;
  so.run_oracle = opt.oracle;
  so.budget.max_nodes = opt.oracle_budget;
  so.budget.max_tenants = opt.oracle_max_tenants;
  if (!opt.rvc.empty()) so.only_rvc = opt.rvc;
  const DeploymentPlan plan = solve(reqs, so);

  write_text(opt.output, dump_document(write_plan(plan)), out);

  if (opt.emit_graphs) {
    fs::path dir = opt.graph_dir;
    if (dir.empty()) dir = opt.output == "-" ? fs::path(".") : fs::path(opt.output).parent_path();
    if (dir.empty()) dir = ".";
    for (const RvcPlan& p : plan.rvcs) {
      const SharingMatrix g = build_sharing_matrix(p.requirements);
      const auto& labels = plan.roster.labels();
      write_text((dir / (p.rvc.id + ".sharing.dot")).string(),
                 export_dot(to_edge_labeled(g, labels, p.rvc.variants, p.rvc.id + " sharing")), out);
      write_text((dir / (p.rvc.id + ".conflict.dot")).string(),
                 export_dot(to_edge_labeled(invert(g), labels, p.rvc.variants, p.rvc.id + " conflict")), out);
    }
  }

  for (const RvcPlan& p : plan.rvcs) {
    if (p.oracle && !p.oracle->skipped && p.oracle->status == OracleStatus::kInconclusive)
      err << "warning: oracle budget exhausted for " << p.rvc.id << "; minimum lies in [" << p.oracle->lower_bound
          << ", " << p.oracle->upper_bound << "]\n";
    if (p.oracle && p.oracle->skipped)
      err << "warning: oracle skipped for " << p.rvc.id << " (more than " << opt.oracle_max_tenants << " tenants)\n";
  }
  if (opt.output != "-") out << format_distribution_table(plan);
  return kExitOk;
}

int cmd_check(const Options& opt, std::ostream& out) {
  const DeploymentPlan plan = from_file(opt.plan, [](const auto& doc) { return read_plan(doc); });
  const VariantRequirements reqs = from_file(opt.input, [](const auto& doc) { return read_requirements_source(doc); });
  if (!(plan.roster == reqs.roster)) throw ReferenceError("plan and instance declare different tenant lists");

  std::size_t violations = 0;
  for (const RvcPlan& p : plan.rvcs) {
    const auto it = std::find_if(reqs.rvcs.begin(), reqs.rvcs.end(), [&](const Rvc& r) { return r.id == p.rvc.id; });
    if (it == reqs.rvcs.end()) throw ReferenceError("plan RVC '" + p.rvc.id + "' is not declared by the instance");
    if (it->variants != p.rvc.variants)
      throw ReferenceError("plan RVC '" + p.rvc.id + "' declares different variants than the instance");
    const auto& table = reqs.tables.at(static_cast<std::size_t>(it - reqs.rvcs.begin()));
    for (const Violation& v : check_valid(build_sharing_matrix(table), p.coloring)) {
      out << p.rvc.id << " variant " << p.rvc.variants.at(static_cast<std::size_t>(v.k)) << ": "
          << plan.roster.label(static_cast<TenantIndex>(v.i)) << " and " << plan.roster.label(static_cast<TenantIndex>(v.j))
          << " share instance " << v.instance << "\n";
      ++violations;
    }
  }
  if (violations > 0) {
    out << violations << (violations == 1 ? " violation\n" : " violations\n");
    return kExitViolation;
  }
  out << "ok: " << plan.rvcs.size() << " RVCs checked, no violations\n";
  return kExitOk;
}

/// Single-RVC instance whose requirements reproduce a random sharing matrix.
/// Variant k is reached through its own functionality, and each tenant lists
/// the later tenants it must not share with.
PlanningInstance generated_instance(const SharingMatrix& g) {
  const Eigen::Index m = g.tenants();
  const Eigen::Index n = g.variants();
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < m; ++i) labels.push_back("T" + std::to_string(i + 1));

  PlanningInstance inst;
  inst.roster = TenantRoster(std::move(labels));
  inst.relations = TenantRelations(static_cast<std::size_t>(m));
  Rvc rvc{"R", {}};
  for (Eigen::Index k = 0; k < n; ++k) {
    rvc.variants.push_back("V" + std::to_string(k + 1));
    inst.functionality_map.functionalities.push_back(
        {"F" + std::to_string(k + 1), {{0, static_cast<std::size_t>(k)}}});
  }
  inst.functionality_map.rvcs.push_back(std::move(rvc));

  inst.requirements = FunctionalityRequirementTable(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < m; ++i) {
      TenantSet excluded;
      for (Eigen::Index j = i + 1; j < m; ++j)
        if (!g(i, j, k)) excluded.insert(static_cast<TenantIndex>(j));
      if (!excluded.empty())
        inst.requirements.set(static_cast<TenantIndex>(i), static_cast<std::size_t>(k),
                              RequirementExpr::dont_share_with(std::move(excluded)));
    }
  }
  return inst;
}

int cmd_gen(const Options& opt, std::ostream& out) {
  const SharingMatrix g = gen_random_instance(opt.tenants, opt.variants, opt.density, opt.seed);
  write_text(opt.output, dump_document(write_instance(generated_instance(g))), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plans multi-tenant RVC deployments from tenant sharing requirements", "rvcplan"};
  app.require_subcommand(1);
  Options opt;

  auto* translate = app.add_subcommand("translate", "Translate functionality requirements into per-RVC variant tables");
  translate->add_option("input", opt.input, "Instance file")->required();
  translate->add_option("-o,--output", opt.output, "Output file ('-' for stdout)");

  auto* solve = app.add_subcommand("solve", "Compute the instance distribution of every RVC");
  solve->add_option("input", opt.input, "Instance or variant-requirements file")->required();
  solve->add_option("-o,--output", opt.output, "Plan file ('-' for stdout)");
  solve->add_flag("--emit-graphs", opt.emit_graphs, "Write sharing and conflict graphs per RVC");
  solve->add_option("--graph-dir", opt.graph_dir, "Directory for graph files (default: next to the plan)");
  solve->add_flag("--oracle", opt.oracle, "Compute the exact minimum instance count per RVC");
  solve->add_option("--oracle-budget", opt.oracle_budget, "Search node budget per RVC");
  solve->add_option("--oracle-max-tenants", opt.oracle_max_tenants, "Largest tenant count the oracle attempts");
  solve->add_option("--rvc", opt.rvc, "Solve only this RVC");

  auto* check = app.add_subcommand("check", "Verify a plan against the requirements it was built from");
  check->add_option("plan", opt.plan, "Plan file")->required();
  check->add_option("instance", opt.input, "Instance or variant-requirements file")->required();

  auto* gen = app.add_subcommand("gen", "Generate a random single-RVC instance");
  gen->add_option("-m,--tenants", opt.tenants, "Tenant count")->required();
  gen->add_option("-n,--variants", opt.variants, "Variant count")->required();
  gen->add_option("-d,--density", opt.density, "Probability that a tenant pair may not share a variant")->required();
  gen->add_option("-s,--seed", opt.seed, "Random seed")->required();
  gen->add_option("-o,--output", opt.output, "Output file ('-' for stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*translate) return cmd_translate(opt, out);
    if (*solve) return cmd_solve(opt, out, err);
    if (*check) return cmd_check(opt, out);
    if (*gen) return cmd_gen(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rvcplan::cli
