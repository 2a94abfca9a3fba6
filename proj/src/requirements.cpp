#include "rvcplan/requirements.hpp"

#include <algorithm>
#include <iterator>
#include <unordered_set>

#include "rvcplan/error.hpp"

namespace rvcplan {

namespace {

constexpr std::string_view kPartnerToken = "P";
constexpr std::string_view kCompetitorToken = "Cp";

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

TenantSet set_union(const TenantSet& a, const TenantSet& b) {
  TenantSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

TenantSet set_intersection(const TenantSet& a, const TenantSet& b) {
  TenantSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

TenantSet set_difference(const TenantSet& a, const TenantSet& b) {
  TenantSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// Rank used to put the pair of a binary rule into a fixed order.
int rank(RequirementKind k) {
  switch (k) {
    case RequirementKind::kShareWithAny: return 0;
    case RequirementKind::kDontShareWithAny: return 1;
    case RequirementKind::kDontShareWith: return 2;
    case RequirementKind::kShareWithJust: return 3;
  }
  return 0;
}

}  // namespace

TenantRoster::TenantRoster(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (label.empty() || trim(label) != label) throw ParseError("invalid tenant label " + quoted(label));
    if (label == kPartnerToken || label == kCompetitorToken)
      throw ParseError("tenant label " + quoted(label) + " collides with a relation token");
    if (label.find_first_of("(),") != std::string::npos)
      throw ParseError("tenant label " + quoted(label) + " contains a reserved character");
    if (!seen.insert(label).second) throw ParseError("duplicate tenant label " + quoted(label));
  }
}

std::optional<TenantIndex> TenantRoster::find(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<TenantIndex>(std::distance(labels_.begin(), it));
}

TenantIndex TenantRoster::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw ReferenceError("unknown tenant label " + quoted(label));
}

RequirementExpr parse_requirement(std::string_view text, const TenantRoster& roster) {
  const std::string_view body = trim(text);
  if (body == "SWAny") return RequirementExpr::share_with_any();
  if (body == "DSWAny") return RequirementExpr::dont_share_with_any();

  const auto open = body.find('(');
  if (open == std::string_view::npos || body.back() != ')')
    throw ParseError("malformed requirement " + quoted(body));

  const std::string_view head = trim(body.substr(0, open));
  RequirementExpr expr;
  if (head == "SWJ") {
    expr.kind = RequirementKind::kShareWithJust;
  } else if (head == "DSW") {
    expr.kind = RequirementKind::kDontShareWith;
  } else {
    throw ParseError("unknown requirement kind " + quoted(head));
  }

  std::string_view inner = body.substr(open + 1, body.size() - open - 2);
  if (inner.find_first_of("()") != std::string_view::npos)
    throw ParseError("malformed requirement " + quoted(body));
  if (trim(inner).empty()) throw ParseError("empty target list in " + quoted(body));

  while (true) {
    const auto comma = inner.find(',');
    const std::string_view token = trim(inner.substr(0, comma));
    if (token.empty()) throw ParseError("empty target in " + quoted(body));
    if (token == kPartnerToken) {
      expr.partners = true;
    } else if (token == kCompetitorToken) {
      expr.competitors = true;
    } else if (auto i = roster.find(token)) {
      expr.tenants.insert(*i);
    } else {
      throw ParseError("unknown tenant label " + quoted(token) + " in " + quoted(body));
    }
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }
  return expr;
}

std::string format_requirement(const RequirementExpr& expr, const TenantRoster& roster) {
  switch (expr.kind) {
    case RequirementKind::kShareWithAny: return "SWAny";
    case RequirementKind::kDontShareWithAny: return "DSWAny";
    default: break;
  }
  std::string out = expr.kind == RequirementKind::kShareWithJust ? "SWJ(" : "DSW(";
  bool first = true;
  const auto append = [&](std::string_view token) {
    if (!first) out += ',';
    out += token;
    first = false;
  };
  for (TenantIndex i : expr.tenants) append(roster.label(i));
  if (expr.partners) append(kPartnerToken);
  if (expr.competitors) append(kCompetitorToken);
  out += ')';
  return out;
}

std::pair<TenantIndex, TenantIndex> TenantRelations::checked_pair(TenantIndex a, TenantIndex b,
                                                                  const char* what) const {
  if (a >= tenants_ || b >= tenants_) throw ReferenceError(std::string(what) + " pair references an undeclared tenant");
  if (a == b) throw ReferenceError(std::string(what) + " pair relates a tenant to itself");
  return std::minmax(a, b);
}

void TenantRelations::add_partners(TenantIndex a, TenantIndex b) {
  const auto p = checked_pair(a, b, "partner");
  if (competitors_.contains(p)) throw ReferenceError("pair is already declared as competitors");
  partners_.insert(p);
}

void TenantRelations::add_competitors(TenantIndex a, TenantIndex b) {
  const auto p = checked_pair(a, b, "competitor");
  if (partners_.contains(p)) throw ReferenceError("pair is already declared as partners");
  competitors_.insert(p);
}

namespace {

TenantSet related_to(const std::set<std::pair<TenantIndex, TenantIndex>>& pairs, TenantIndex i) {
  TenantSet out;
  for (const auto& [a, b] : pairs) {
    if (a == i) out.insert(b);
    if (b == i) out.insert(a);
  }
  return out;
}

}  // namespace

TenantSet TenantRelations::partners_of(TenantIndex i) const { return related_to(partners_, i); }
TenantSet TenantRelations::competitors_of(TenantIndex i) const { return related_to(competitors_, i); }

bool TenantRelations::are_partners(TenantIndex a, TenantIndex b) const {
  return partners_.contains(std::minmax(a, b));
}

bool TenantRelations::are_competitors(TenantIndex a, TenantIndex b) const {
  return competitors_.contains(std::minmax(a, b));
}

RequirementExpr expand_relations(const RequirementExpr& expr, TenantIndex owner, const TenantRelations& rel) {
  if (owner >= rel.tenants()) throw ReferenceError("requirement owner is not a declared tenant");
  if (expr.kind == RequirementKind::kShareWithAny || expr.kind == RequirementKind::kDontShareWithAny)
    return {expr.kind, {}, false, false};

  TenantSet targets = expr.tenants;
  if (!targets.empty() && *targets.rbegin() >= rel.tenants())
    throw ReferenceError("requirement references an undeclared tenant");
  if (expr.partners) targets.merge(rel.partners_of(owner));
  if (expr.competitors) targets.merge(rel.competitors_of(owner));
  targets.erase(owner);

  if (targets.empty()) {
    return expr.kind == RequirementKind::kShareWithJust ? RequirementExpr::dont_share_with_any()
                                                        : RequirementExpr::share_with_any();
  }
  return {expr.kind, std::move(targets), false, false};
}

RequirementExpr combine(const RequirementExpr& a, const RequirementExpr& b) {
  if (!a.grounded() || !b.grounded()) throw Error("combine requires grounded requirements");

  const auto& [lo, hi] = rank(a.kind) <= rank(b.kind) ? std::tie(a, b) : std::tie(b, a);
  switch (lo.kind) {
    case RequirementKind::kShareWithAny: return hi;
    case RequirementKind::kDontShareWithAny: return RequirementExpr::dont_share_with_any();
    case RequirementKind::kDontShareWith:
      if (hi.kind == RequirementKind::kDontShareWith)
        return RequirementExpr::dont_share_with(set_union(lo.tenants, hi.tenants));
      else {
        TenantSet kept = set_difference(hi.tenants, lo.tenants);
        if (kept.empty()) return RequirementExpr::dont_share_with_any();
        return RequirementExpr::share_with_just(std::move(kept));
      }
    case RequirementKind::kShareWithJust: {
      TenantSet kept = set_intersection(lo.tenants, hi.tenants);
      if (kept.empty()) return RequirementExpr::dont_share_with_any();
      return RequirementExpr::share_with_just(std::move(kept));
    }
  }
  return hi;
}

std::optional<std::size_t> Rvc::find_variant(std::string_view variant) const {
  const auto it = std::find(variants.begin(), variants.end(), variant);
  if (it == variants.end()) return std::nullopt;
  return static_cast<std::size_t>(std::distance(variants.begin(), it));
}

void FunctionalityMap::validate() const {
  std::unordered_set<std::string_view> rvc_ids;
  for (const auto& rvc : rvcs) {
    if (!rvc_ids.insert(rvc.id).second) throw ReferenceError("duplicate RVC id " + quoted(rvc.id));
    if (rvc.variants.empty()) throw ReferenceError("RVC " + quoted(rvc.id) + " declares no variants");
    std::unordered_set<std::string_view> variant_ids;
    for (const auto& v : rvc.variants) {
      if (!variant_ids.insert(v).second)
        throw ReferenceError("duplicate variant " + quoted(v) + " in RVC " + quoted(rvc.id));
    }
  }
  std::unordered_set<std::string_view> functionality_ids;
  for (const auto& f : functionalities) {
    if (!functionality_ids.insert(f.id).second) throw ReferenceError("duplicate functionality id " + quoted(f.id));
    for (const auto& step : f.path) {
      if (step.rvc >= rvcs.size() || step.variant >= rvcs[step.rvc].variants.size())
        throw ReferenceError("functionality " + quoted(f.id) + " traverses an undeclared variant");
    }
  }
}

std::vector<VariantRequirementTable> translate(const FunctionalityRequirementTable& table,
                                               const FunctionalityMap& fmap, const TenantRelations& rel) {
  fmap.validate();
  if (table.functionalities() != fmap.functionalities.size())
    throw DimensionError("requirement table and functionality map disagree on functionality count");
  if (table.tenants() != rel.tenants())
    throw DimensionError("requirement table and relations disagree on tenant count");

  std::vector<VariantRequirementTable> out;
  out.reserve(fmap.rvcs.size());
  for (std::size_t r = 0; r < fmap.rvcs.size(); ++r) out.emplace_back(r, table.tenants(), fmap.rvcs[r].variants.size());

  for (std::size_t f = 0; f < fmap.functionalities.size(); ++f) {
    for (TenantIndex i = 0; i < table.tenants(); ++i) {
      const RequirementExpr grounded = expand_relations(table.at(i, f), i, rel);
      for (const VariantRef& step : fmap.functionalities[f].path) {
        RequirementExpr& cell = out[step.rvc].at(i, step.variant);
        cell = combine(cell, grounded);
      }
    }
  }
  return out;
}

}  // namespace rvcplan
