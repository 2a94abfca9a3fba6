#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rvcplan {

using TenantIndex = std::size_t;

/// Tenants referenced by a requirement, ordered by index.
using TenantSet = std::set<TenantIndex>;

/// Ordered tenant labels. The position of a label is its tenant index and
/// also the order in which tenants are colored.
class TenantRoster {
 public:
  TenantRoster() = default;
  explicit TenantRoster(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(TenantIndex i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<TenantIndex> find(std::string_view label) const;

  /// Like find() but throws ReferenceError for an unknown label.
  TenantIndex index_of(std::string_view label) const;

  friend bool operator==(const TenantRoster&, const TenantRoster&) = default;

 private:
  std::vector<std::string> labels_;
};

enum class RequirementKind { kShareWithAny, kShareWithJust, kDontShareWith, kDontShareWithAny };

/// One tenant's sharing constraint for one functionality or variant.
///
/// Targets are explicit tenants plus the two relational tokens P (partners)
/// and Cp (competitors). Only SWJ/DSW carry targets. An expression is
/// grounded once the relational tokens have been replaced by tenants.
struct RequirementExpr {
  RequirementKind kind = RequirementKind::kShareWithAny;
  TenantSet tenants;
  bool partners = false;
  bool competitors = false;

  static RequirementExpr share_with_any() { return {}; }
  static RequirementExpr dont_share_with_any() { return {RequirementKind::kDontShareWithAny, {}, false, false}; }
  static RequirementExpr share_with_just(TenantSet t) {
    return {RequirementKind::kShareWithJust, std::move(t), false, false};
  }
  static RequirementExpr dont_share_with(TenantSet t) {
    return {RequirementKind::kDontShareWith, std::move(t), false, false};
  }

  bool grounded() const { return !partners && !competitors; }
  bool has_targets() const { return !tenants.empty() || partners || competitors; }

  friend bool operator==(const RequirementExpr&, const RequirementExpr&) = default;
};

/// Parses `SWAny`, `DSWAny`, `SWJ(tok, ...)` or `DSW(tok, ...)` where a token
/// is a roster label, `P` or `Cp`. Whitespace is ignored. Throws ParseError
/// naming the offending token.
RequirementExpr parse_requirement(std::string_view text, const TenantRoster& roster);

/// Canonical text form: tenants in index order, then P, then Cp.
std::string format_requirement(const RequirementExpr& expr, const TenantRoster& roster);

/// Symmetric, irreflexive partner and competitor relations over m tenants.
class TenantRelations {
 public:
  explicit TenantRelations(std::size_t tenants = 0) : tenants_(tenants) {}

  std::size_t tenants() const { return tenants_; }

  void add_partners(TenantIndex a, TenantIndex b);
  void add_competitors(TenantIndex a, TenantIndex b);

  TenantSet partners_of(TenantIndex i) const;
  TenantSet competitors_of(TenantIndex i) const;

  bool are_partners(TenantIndex a, TenantIndex b) const;
  bool are_competitors(TenantIndex a, TenantIndex b) const;

  /// Pairs (a, b) with a < b.
  const std::set<std::pair<TenantIndex, TenantIndex>>& partner_pairs() const { return partners_; }
  const std::set<std::pair<TenantIndex, TenantIndex>>& competitor_pairs() const { return competitors_; }

 private:
  std::pair<TenantIndex, TenantIndex> checked_pair(TenantIndex a, TenantIndex b, const char* what) const;

  std::size_t tenants_;
  std::set<std::pair<TenantIndex, TenantIndex>> partners_;
  std::set<std::pair<TenantIndex, TenantIndex>> competitors_;
};

/// Replaces P and Cp by the owner's partner and competitor sets and drops the
/// owner from the targets. An emptied SWJ becomes DSWAny and an emptied DSW
/// becomes SWAny.
RequirementExpr expand_relations(const RequirementExpr& expr, TenantIndex owner, const TenantRelations& rel);

/// Merges two grounded requirements of the same tenant. Commutative,
/// associative and idempotent:
///
///   SWAny  & z       -> z
///   DSWAny & z       -> DSWAny
///   DSW(X) & DSW(Y)  -> DSW(X | Y)
///   SWJ(X) & SWJ(Y)  -> SWJ(X & Y), DSWAny if empty
///   DSW(X) & SWJ(Y)  -> SWJ(Y \ X), DSWAny if empty
RequirementExpr combine(const RequirementExpr& a, const RequirementExpr& b);

struct Rvc {
  std::string id;
  std::vector<std::string> variants;

  std::optional<std::size_t> find_variant(std::string_view variant) const;

  friend bool operator==(const Rvc&, const Rvc&) = default;
};

struct VariantRef {
  std::size_t rvc = 0;
  std::size_t variant = 0;

  friend bool operator==(const VariantRef&, const VariantRef&) = default;
};

struct Functionality {
  std::string id;
  std::vector<VariantRef> path;

  friend bool operator==(const Functionality&, const Functionality&) = default;
};

/// Declared RVCs and, per functionality, the RVC variants it traverses.
struct FunctionalityMap {
  std::vector<Rvc> rvcs;
  std::vector<Functionality> functionalities;

  /// Throws ReferenceError on dangling references or duplicate ids.
  void validate() const;

  friend bool operator==(const FunctionalityMap&, const FunctionalityMap&) = default;
};

/// Tenant x functionality grid of requirements; unset cells are SWAny.
class FunctionalityRequirementTable {
 public:
  FunctionalityRequirementTable(std::size_t tenants, std::size_t functionalities)
      : tenants_(tenants), functionalities_(functionalities), cells_(tenants * functionalities) {}

  std::size_t tenants() const { return tenants_; }
  std::size_t functionalities() const { return functionalities_; }

  const RequirementExpr& at(TenantIndex i, std::size_t f) const { return cells_.at(i * functionalities_ + f); }
  void set(TenantIndex i, std::size_t f, RequirementExpr expr) { cells_.at(i * functionalities_ + f) = std::move(expr); }

 private:
  std::size_t tenants_;
  std::size_t functionalities_;
  std::vector<RequirementExpr> cells_;
};

/// The m x n table of grounded requirements for one RVC.
class VariantRequirementTable {
 public:
  VariantRequirementTable(std::size_t rvc, std::size_t tenants, std::size_t variants)
      : rvc_(rvc), tenants_(tenants), variants_(variants), cells_(tenants * variants) {}

  std::size_t rvc() const { return rvc_; }
  std::size_t tenants() const { return tenants_; }
  std::size_t variants() const { return variants_; }

  const RequirementExpr& at(TenantIndex i, std::size_t k) const { return cells_.at(i * variants_ + k); }
  RequirementExpr& at(TenantIndex i, std::size_t k) { return cells_.at(i * variants_ + k); }

  friend bool operator==(const VariantRequirementTable&, const VariantRequirementTable&) = default;

 private:
  std::size_t rvc_;
  std::size_t tenants_;
  std::size_t variants_;
  std::vector<RequirementExpr> cells_;
};

/// Folds every functionality-level requirement into the variants its
/// functionality traverses, producing one grounded table per RVC.
std::vector<VariantRequirementTable> translate(const FunctionalityRequirementTable& table,
                                               const FunctionalityMap& fmap, const TenantRelations& rel);

}  // namespace rvcplan
