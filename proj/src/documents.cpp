#include "rvcplan/documents.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rvcplan {

using json = Document;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

std::string at_key(const std::string& path, std::string_view key) { return path.empty() ? std::string(key) : path + "." + std::string(key); }
std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& field(const json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) fail(at_key(path, key), "missing field");
  return *it;
}

const json* optional_field(const json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

const json& as_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  return v;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<std::string> as_strings(const json& v, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < as_array(v, path).size(); ++i) out.push_back(as_string(v[i], at_index(path, i)));
  return out;
}

/// Runs `fn`, prefixing library errors with the document path.
template <typename Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const ReferenceError& e) {
    throw ReferenceError(path + ": " + e.what());
  } catch (const Error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void check_header(const json& doc, const char* kind, bool kind_optional) {
  as_object(doc, "document");
  const json& format = field(doc, "format", "");
  if (as_int(format, "format") != kFormatVersion)
    fail("format", "unsupported version " + format.dump() + " (expected " + std::to_string(kFormatVersion) + ")");
  const json* k = optional_field(doc, "kind", "");
  if (k == nullptr) {
    if (!kind_optional) fail("kind", "missing field");
    return;
  }
  const std::string actual = as_string(*k, "kind");
  if (actual != kind) fail("kind", "expected '" + std::string(kind) + "', found '" + actual + "'");
}

std::string document_kind(const json& doc) {
  const json* k = doc.is_object() ? optional_field(doc, "kind", "") : nullptr;
  return k != nullptr && k->is_string() ? k->get<std::string>() : std::string(kInstanceKind);
}

TenantRoster read_roster(const json& doc) {
  const json& tenants = field(doc, "tenants", "");
  auto labels = as_strings(tenants, "tenants");
  if (labels.empty()) fail("tenants", "at least one tenant is required");
  return at_path("tenants", [&] { return TenantRoster(std::move(labels)); });
}

std::vector<Rvc> read_rvcs_header(const json& rvcs, const std::string& path) {
  std::vector<Rvc> out;
  for (std::size_t r = 0; r < as_array(rvcs, path).size(); ++r) {
    const std::string p = at_index(path, r);
    out.push_back({as_string(field(rvcs[r], "id", p), at_key(p, "id")),
                   as_strings(field(rvcs[r], "variants", p), at_key(p, "variants"))});
  }
  at_path(path, [&] { FunctionalityMap{out, {}}.validate(); });
  return out;
}

/// Rows `[{tenant, cells}]` in roster order, one per tenant.
VariantRequirementTable read_requirement_rows(const json& rows, const std::string& path, std::size_t rvc_index,
                                              const Rvc& rvc, const TenantRoster& roster) {
  VariantRequirementTable table(rvc_index, roster.size(), rvc.variants.size());
  if (as_array(rows, path).size() != roster.size()) fail(path, "expected one row per tenant");
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const std::string p = at_index(path, i);
    const std::string tenant = as_string(field(rows[i], "tenant", p), at_key(p, "tenant"));
    if (tenant != roster.label(i)) {
      if (!roster.find(tenant)) throw ReferenceError(at_key(p, "tenant") + ": unknown tenant label '" + tenant + "'");
      fail(at_key(p, "tenant"), "expected '" + roster.label(i) + "', rows must follow tenant order");
    }
    const auto cells = as_strings(field(rows[i], "cells", p), at_key(p, "cells"));
    if (cells.size() != rvc.variants.size()) fail(at_key(p, "cells"), "expected one cell per variant");
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const std::string cp = at_index(at_key(p, "cells"), k);
      RequirementExpr e = at_path(cp, [&] { return parse_requirement(cells[k], roster); });
      if (!e.grounded()) fail(cp, "relation tokens are not allowed in variant requirements");
      if (e.tenants.contains(i)) fail(cp, "requirement names its own tenant");
      table.at(i, k) = std::move(e);
    }
  }
  return table;
}

json write_requirement_rows(const VariantRequirementTable& table, const TenantRoster& roster) {
  json rows = json::array();
  for (std::size_t i = 0; i < table.tenants(); ++i) {
    json cells = json::array();
    for (std::size_t k = 0; k < table.variants(); ++k) cells.push_back(format_requirement(table.at(i, k), roster));
    rows.push_back({{"tenant", roster.label(i)}, {"cells", std::move(cells)}});
  }
  return rows;
}

json write_rvc_header(const Rvc& rvc) { return {{"id", rvc.id}, {"variants", rvc.variants}}; }

const char* status_name(const OracleSummary& s) {
  if (s.skipped) return "skipped";
  return s.status == OracleStatus::kOptimal ? "optimal" : "inconclusive";
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

PlanningInstance read_instance(const json& doc) {
  check_header(doc, kInstanceKind, true);
  PlanningInstance inst;
  inst.roster = read_roster(doc);
  inst.relations = TenantRelations(inst.roster.size());

  if (const json* rel = optional_field(doc, "relations", "")) {
    as_object(*rel, "relations");
    for (const char* which : {"partners", "competitors"}) {
      const json* pairs = optional_field(*rel, which, "relations");
      if (pairs == nullptr) continue;
      const std::string path = at_key("relations", which);
      for (std::size_t p = 0; p < as_array(*pairs, path).size(); ++p) {
        const std::string pp = at_index(path, p);
        const auto labels = as_strings((*pairs)[p], pp);
        if (labels.size() != 2) fail(pp, "expected a pair of tenant labels");
        at_path(pp, [&] {
          const TenantIndex a = inst.roster.index_of(labels[0]);
          const TenantIndex b = inst.roster.index_of(labels[1]);
          if (std::string_view(which) == "partners") {
            inst.relations.add_partners(a, b);
          } else {
            inst.relations.add_competitors(a, b);
          }
        });
      }
    }
  }

  FunctionalityMap& fmap = inst.functionality_map;
  fmap.rvcs = read_rvcs_header(field(doc, "rvcs", ""), "rvcs");

  const json& funcs = field(doc, "functionalities", "");
  for (std::size_t f = 0; f < as_array(funcs, "functionalities").size(); ++f) {
    const std::string p = at_index("functionalities", f);
    Functionality fn{as_string(field(funcs[f], "id", p), at_key(p, "id")), {}};
    const json& path = field(funcs[f], "path", p);
    const std::string pp = at_key(p, "path");
    for (std::size_t s = 0; s < as_array(path, pp).size(); ++s) {
      const std::string sp = at_index(pp, s);
      const auto step = as_strings(path[s], sp);
      if (step.size() != 2) fail(sp, "expected an [rvc, variant] pair");
      const auto rvc = std::find_if(fmap.rvcs.begin(), fmap.rvcs.end(), [&](const Rvc& r) { return r.id == step[0]; });
      if (rvc == fmap.rvcs.end()) throw ReferenceError(sp + ": unknown RVC '" + step[0] + "'");
      const auto variant = rvc->find_variant(step[1]);
      if (!variant) throw ReferenceError(sp + ": RVC '" + step[0] + "' has no variant '" + step[1] + "'");
      fn.path.push_back({static_cast<std::size_t>(rvc - fmap.rvcs.begin()), *variant});
    }
    fmap.functionalities.push_back(std::move(fn));
  }
  at_path("functionalities", [&] { fmap.validate(); });

  inst.requirements = FunctionalityRequirementTable(inst.roster.size(), fmap.functionalities.size());
  if (const json* reqs = optional_field(doc, "requirements", "")) {
    for (const auto& [label, row] : as_object(*reqs, "requirements").items()) {
      const std::string p = at_key("requirements", label);
      const auto tenant = inst.roster.find(label);
      if (!tenant) throw ReferenceError(p + ": unknown tenant label '" + label + "'");
      for (const auto& [fid, cell] : as_object(row, p).items()) {
        const std::string cp = at_key(p, fid);
        const auto it = std::find_if(fmap.functionalities.begin(), fmap.functionalities.end(),
                                     [&](const Functionality& fn) { return fn.id == fid; });
        if (it == fmap.functionalities.end()) throw ReferenceError(cp + ": unknown functionality '" + fid + "'");
        const std::string text = as_string(cell, cp);
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        inst.requirements.set(*tenant, static_cast<std::size_t>(it - fmap.functionalities.begin()),
                              at_path(cp, [&] { return parse_requirement(text, inst.roster); }));
      }
    }
  }
  return inst;
}

json write_instance(const PlanningInstance& instance) {
  const auto& roster = instance.roster;
  const auto pairs = [&](const auto& set) {
    json out = json::array();
    for (const auto& [a, b] : set) out.push_back({roster.label(a), roster.label(b)});
    return out;
  };

  json rvcs = json::array();
  for (const auto& rvc : instance.functionality_map.rvcs) rvcs.push_back(write_rvc_header(rvc));

  json funcs = json::array();
  for (const auto& fn : instance.functionality_map.functionalities) {
    json path = json::array();
    for (const auto& step : fn.path) {
      const Rvc& rvc = instance.functionality_map.rvcs.at(step.rvc);
      path.push_back({rvc.id, rvc.variants.at(step.variant)});
    }
    funcs.push_back({{"id", fn.id}, {"path", std::move(path)}});
  }

  json reqs = json::object();
  for (std::size_t i = 0; i < roster.size(); ++i) {
    for (std::size_t f = 0; f < instance.requirements.functionalities(); ++f) {
      const RequirementExpr& e = instance.requirements.at(i, f);
      if (e.kind == RequirementKind::kShareWithAny) continue;
      reqs[roster.label(i)][instance.functionality_map.functionalities.at(f).id] = format_requirement(e, roster);
    }
  }

  return {{"format", kFormatVersion},
          {"kind", kInstanceKind},
          {"tenants", roster.labels()},
          {"relations",
           {{"partners", pairs(instance.relations.partner_pairs())},
            {"competitors", pairs(instance.relations.competitor_pairs())}}},
          {"rvcs", std::move(rvcs)},
          {"functionalities", std::move(funcs)},
          {"requirements", std::move(reqs)}};
}

VariantRequirements read_variant_requirements(const json& doc) {
  check_header(doc, kRequirementsKind, false);
  VariantRequirements out;
  out.roster = read_roster(doc);
  const json& rvcs = field(doc, "rvcs", "");
  out.rvcs = read_rvcs_header(rvcs, "rvcs");
  for (std::size_t r = 0; r < out.rvcs.size(); ++r) {
    const std::string p = at_index("rvcs", r);
    out.tables.push_back(
        read_requirement_rows(field(rvcs[r], "requirements", p), at_key(p, "requirements"), r, out.rvcs[r], out.roster));
  }
  return out;
}

json write_variant_requirements(const VariantRequirements& requirements) {
  json rvcs = json::array();
  for (std::size_t r = 0; r < requirements.rvcs.size(); ++r) {
    json entry = write_rvc_header(requirements.rvcs[r]);
    entry["requirements"] = write_requirement_rows(requirements.tables.at(r), requirements.roster);
    rvcs.push_back(std::move(entry));
  }
  return {{"format", kFormatVersion},
          {"kind", kRequirementsKind},
          {"tenants", requirements.roster.labels()},
          {"rvcs", std::move(rvcs)}};
}

VariantRequirements read_requirements_source(const json& doc) {
  const std::string kind = document_kind(doc);
  if (kind == kRequirementsKind) return read_variant_requirements(doc);
  if (kind == kInstanceKind) return translate_instance(read_instance(doc));
  fail("kind", "expected '" + std::string(kInstanceKind) + "' or '" + kRequirementsKind + "', found '" + kind + "'");
}

DeploymentPlan read_plan(const json& doc) {
  check_header(doc, kPlanKind, false);
  DeploymentPlan plan;
  plan.roster = read_roster(doc);
  const std::size_t m = plan.roster.size();
  const json& rvcs = field(doc, "rvcs", "");
  const std::vector<Rvc> headers = read_rvcs_header(rvcs, "rvcs");

  for (std::size_t r = 0; r < headers.size(); ++r) {
    const std::string p = at_index("rvcs", r);
    const Rvc& rvc = headers[r];
    const std::size_t n = rvc.variants.size();
    VariantRequirementTable table =
        read_requirement_rows(field(rvcs[r], "requirements", p), at_key(p, "requirements"), r, rvc, plan.roster);

    const std::string colp = at_key(p, "coloring");
    const json& rows = as_array(field(rvcs[r], "coloring", p), colp);
    if (rows.size() != m) fail(colp, "expected one row per tenant");
    ColoringMatrix::Grid grid(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i) {
      const std::string rp = at_index(colp, i);
      const std::string tenant = as_string(field(rows[i], "tenant", rp), at_key(rp, "tenant"));
      if (tenant != plan.roster.label(i)) {
        if (!plan.roster.find(tenant)) throw ReferenceError(at_key(rp, "tenant") + ": unknown tenant label '" + tenant + "'");
        fail(at_key(rp, "tenant"), "expected '" + plan.roster.label(i) + "', rows must follow tenant order");
      }
      const std::string ip = at_key(rp, "instances");
      const json& ids = as_array(field(rows[i], "instances", rp), ip);
      if (ids.size() != n) fail(ip, "expected one instance per variant");
      for (std::size_t k = 0; k < n; ++k) {
        const auto c = as_int(ids[k], at_index(ip, k));
        if (c < 1) fail(at_index(ip, k), "instance ids start at 1");
        grid(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = static_cast<int>(c);
      }
    }
    ColoringMatrix coloring(std::move(grid));

    if (as_int(field(rvcs[r], "instances", p), at_key(p, "instances")) != coloring.instances())
      fail(at_key(p, "instances"), "does not match the coloring");

    InstanceDistribution dist = distribution(coloring);
    const std::string dp = at_key(p, "distribution");
    const json& dist_doc = as_array(field(rvcs[r], "distribution", p), dp);
    if (dist_doc.size() != static_cast<std::size_t>(coloring.instances())) fail(dp, "expected one entry per instance");
    for (std::size_t c = 0; c < dist_doc.size(); ++c) {
      const std::string ep = at_index(dp, c);
      if (as_int(field(dist_doc[c], "instance", ep), at_key(ep, "instance")) != static_cast<std::int64_t>(c + 1))
        fail(at_key(ep, "instance"), "instances must be listed in order from 1");
      const std::string tp = at_key(ep, "tenants");
      const json& per_variant = as_array(field(dist_doc[c], "tenants", ep), tp);
      if (per_variant.size() != n) fail(tp, "expected one tenant list per variant");
      for (std::size_t k = 0; k < n; ++k) {
        TenantSet listed;
        for (const auto& label : as_strings(per_variant[k], at_index(tp, k))) {
          listed.insert(at_path(at_index(tp, k), [&] { return plan.roster.index_of(label); }));
        }
        if (listed != dist.tenants(static_cast<int>(c + 1), static_cast<Eigen::Index>(k)))
          fail(at_index(tp, k), "does not match the coloring");
      }
    }

    std::optional<OracleSummary> summary;
    if (const json* o = optional_field(rvcs[r], "oracle", p)) {
      const std::string op = at_key(p, "oracle");
      summary.emplace();
      const std::string status = as_string(field(*o, "status", op), at_key(op, "status"));
      if (status == "skipped") {
        summary->skipped = true;
      } else if (status == "optimal" || status == "inconclusive") {
        summary->status = status == "optimal" ? OracleStatus::kOptimal : OracleStatus::kInconclusive;
        if (summary->status == OracleStatus::kOptimal)
          summary->h_star = static_cast<int>(as_int(field(*o, "h_star", op), at_key(op, "h_star")));
        summary->lower_bound = static_cast<int>(as_int(field(*o, "lower_bound", op), at_key(op, "lower_bound")));
        summary->upper_bound = static_cast<int>(as_int(field(*o, "upper_bound", op), at_key(op, "upper_bound")));
        summary->explored = static_cast<std::uint64_t>(as_int(field(*o, "explored", op), at_key(op, "explored")));
      } else {
        fail(at_key(op, "status"), "unknown status '" + status + "'");
      }
    }
    plan.rvcs.push_back({rvc, std::move(table), std::move(coloring), std::move(dist), summary});
  }
  return plan;
}

json write_plan(const DeploymentPlan& plan) {
  const auto& roster = plan.roster;
  json rvcs = json::array();
  for (const RvcPlan& p : plan.rvcs) {
    json entry = write_rvc_header(p.rvc);
    entry["requirements"] = write_requirement_rows(p.requirements, roster);

    json coloring = json::array();
    for (Eigen::Index i = 0; i < p.coloring.tenants(); ++i) {
      json ids = json::array();
      for (Eigen::Index k = 0; k < p.coloring.variants(); ++k) ids.push_back(p.coloring(i, k));
      coloring.push_back({{"tenant", roster.label(static_cast<TenantIndex>(i))}, {"instances", std::move(ids)}});
    }
    entry["coloring"] = std::move(coloring);
    entry["instances"] = p.coloring.instances();

    json dist = json::array();
    for (int c = 1; c <= p.distribution.instances(); ++c) {
      json per_variant = json::array();
      for (Eigen::Index k = 0; k < p.distribution.variants(); ++k) {
        json labels = json::array();
        for (TenantIndex i : p.distribution.tenants(c, k)) labels.push_back(roster.label(i));
        per_variant.push_back(std::move(labels));
      }
      dist.push_back({{"instance", c}, {"tenants", std::move(per_variant)}});
    }
    entry["distribution"] = std::move(dist);

    if (p.oracle) {
      const OracleSummary& s = *p.oracle;
      json o = {{"status", status_name(s)}, {"verdict", oracle_verdict(s, p.coloring.instances())}};
      if (!s.skipped) {
        if (s.status == OracleStatus::kOptimal) o["h_star"] = s.h_star;
        o["lower_bound"] = s.lower_bound;
        o["upper_bound"] = s.upper_bound;
        o["explored"] = s.explored;
      }
      entry["oracle"] = std::move(o);
    }
    rvcs.push_back(std::move(entry));
  }
  return {{"format", kFormatVersion}, {"kind", kPlanKind}, {"tenants", roster.labels()}, {"rvcs", std::move(rvcs)}};
}

}  // namespace rvcplan
