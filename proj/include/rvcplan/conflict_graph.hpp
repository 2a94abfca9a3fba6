#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "rvcplan/error.hpp"
#include "rvcplan/requirements.hpp"

namespace rvcplan {

struct SharingTag {};
struct ConflictTag {};

template <typename Tag>
struct ComplementTag;
template <>
struct ComplementTag<SharingTag> {
  using type = ConflictTag;
};
template <>
struct ComplementTag<ConflictTag> {
  using type = SharingTag;
};

/// Value held on the diagonal of a well-formed tensor of the given kind.
template <typename Tag>
inline constexpr bool kDiagonalValue = std::is_same_v<Tag, SharingTag>;

/// Boolean m x m x n tensor over tenant pairs, stored as n symmetric m x m
/// slices (one per variant). The tag distinguishes a sharing matrix
/// (1 = may share) from a conflict matrix (1 = must not share).
template <typename Tag>
class PairTensor {
 public:
  using Slice = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

  PairTensor() = default;

  /// Off-diagonal entries take `fill`; the diagonal takes the kind's value.
  PairTensor(Eigen::Index tenants, Eigen::Index variants, bool fill)
      : tenants_(tenants), slices_(static_cast<std::size_t>(variants), Slice::Constant(tenants, tenants, fill)) {
    for (auto& s : slices_) s.matrix().diagonal().setConstant(kDiagonalValue<Tag>);
  }

  /// Takes ownership of raw slices. All slices must be square and equal-sized.
  explicit PairTensor(std::vector<Slice> slices) : slices_(std::move(slices)) {
    tenants_ = slices_.empty() ? 0 : slices_.front().rows();
    for (const auto& s : slices_) {
      if (s.rows() != tenants_ || s.cols() != tenants_) throw DimensionError("tensor slices must be square and equal-sized");
    }
  }

  Eigen::Index tenants() const { return tenants_; }
  Eigen::Index variants() const { return static_cast<Eigen::Index>(slices_.size()); }

  bool operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) const { return slices_[static_cast<std::size_t>(k)](i, j); }

  /// Sets both (i, j, k) and (j, i, k).
  void set_pair(Eigen::Index i, Eigen::Index j, Eigen::Index k, bool value) {
    auto& s = slices_[static_cast<std::size_t>(k)];
    s(i, j) = value;
    s(j, i) = value;
  }

  const Slice& slice(Eigen::Index k) const { return slices_[static_cast<std::size_t>(k)]; }
  const std::vector<Slice>& slices() const { return slices_; }

  bool is_symmetric() const {
    for (const auto& s : slices_)
      if ((s != s.transpose()).any()) return false;
    return true;
  }

  bool has_canonical_diagonal() const {
    for (const auto& s : slices_)
      if ((s.matrix().diagonal().array() != kDiagonalValue<Tag>).any()) return false;
    return true;
  }

  friend bool operator==(const PairTensor& a, const PairTensor& b) {
    if (a.tenants_ != b.tenants_ || a.slices_.size() != b.slices_.size()) return false;
    for (std::size_t k = 0; k < a.slices_.size(); ++k)
      if ((a.slices_[k] != b.slices_[k]).any()) return false;
    return true;
  }

 private:
  Eigen::Index tenants_ = 0;
  std::vector<Slice> slices_;
};

/// g(i, j, k) = 1 iff tenants i and j may share variant k.
using SharingMatrix = PairTensor<SharingTag>;
/// g'(i, j, k) = 1 iff tenants i and j must not share variant k.
using ConflictMatrix = PairTensor<ConflictTag>;

/// Starts from all-ones and clears every pair a grounded requirement forbids.
/// The diagonal always stays 1.
SharingMatrix build_sharing_matrix(const VariantRequirementTable& table);

/// Elementwise complement, diagonal included.
template <typename Tag>
PairTensor<typename ComplementTag<Tag>::type> invert(const PairTensor<Tag>& m) {
  std::vector<typename PairTensor<Tag>::Slice> out;
  out.reserve(m.slices().size());
  for (const auto& s : m.slices()) out.emplace_back(!s);
  return PairTensor<typename ComplementTag<Tag>::type>(std::move(out));
}

struct LabeledEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  /// Variant indices carried by the edge; empty means every variant.
  std::vector<std::size_t> label;

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

/// Undirected edge-labeled graph view of one RVC tensor.
struct EdgeLabeledGraph {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<std::string> variants;
  /// Sorted by (u, v) with u < v.
  std::vector<LabeledEdge> edges;

  friend bool operator==(const EdgeLabeledGraph&, const EdgeLabeledGraph&) = default;
};

namespace detail {
EdgeLabeledGraph edges_of(const std::vector<Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>>& slices,
                          std::vector<std::string> vertices, std::vector<std::string> variants, std::string name);
std::vector<Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>> slices_of(const EdgeLabeledGraph& g, bool diagonal);
}  // namespace detail

template <typename Tag>
EdgeLabeledGraph to_edge_labeled(const PairTensor<Tag>& m, std::vector<std::string> vertices,
                                 std::vector<std::string> variants, std::string name = {}) {
  if (static_cast<Eigen::Index>(vertices.size()) != m.tenants() ||
      static_cast<Eigen::Index>(variants.size()) != m.variants())
    throw DimensionError("graph labels do not match tensor dimensions");
  return detail::edges_of(m.slices(), std::move(vertices), std::move(variants), std::move(name));
}

/// Inverse of to_edge_labeled; the diagonal takes the kind's canonical value.
template <typename Tag>
PairTensor<Tag> from_edge_labeled(const EdgeLabeledGraph& g) {
  return PairTensor<Tag>(detail::slices_of(g, kDiagonalValue<Tag>));
}

/// Graphviz text: vertices in index order, edges in (u, v) order, labels as
/// comma-joined variant ids. Unlabeled edges carry no attribute.
std::string export_dot(const EdgeLabeledGraph& g);

}  // namespace rvcplan
