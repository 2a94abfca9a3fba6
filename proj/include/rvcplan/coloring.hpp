#pragma once

#include <Eigen/Core>

#include <vector>

#include "rvcplan/conflict_graph.hpp"
#include "rvcplan/requirements.hpp"

namespace rvcplan {

/// Integer m x n grid: entry (i, k) is the instance (color, 1-based) serving
/// tenant i under variant k.
class ColoringMatrix {
 public:
  using Grid = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

  ColoringMatrix() = default;

  /// Throws DimensionError if any entry is below 1.
  explicit ColoringMatrix(Grid grid);

  Eigen::Index tenants() const { return grid_.rows(); }
  Eigen::Index variants() const { return grid_.cols(); }
  int operator()(Eigen::Index i, Eigen::Index k) const { return grid_(i, k); }
  const Grid& grid() const { return grid_; }

  /// Largest color in use.
  int instances() const { return instances_; }

  /// True if every color in 1..instances() labels at least one section.
  bool has_contiguous_colors() const;

  friend bool operator==(const ColoringMatrix& a, const ColoringMatrix& b) { return a.grid_ == b.grid_; }

 private:
  Grid grid_;
  int instances_ = 0;
};

/// Sequential first-fit coloring of the per-variant conflict graphs.
///
/// Tenant 0 gets color 1 on every variant. Every later tenant, variant by
/// variant, takes the smallest existing color not held under that variant by
/// an earlier tenant it conflicts with, opening a new color only when none
/// fits. The color pool is shared by all variants, since one instance serves
/// every variant of its RVC.
ColoringMatrix color(const ConflictMatrix& conflicts);

/// Number of instances the coloring deploys.
int instance_count(const ColoringMatrix& d);

/// Tenants served by each instance under each variant.
class InstanceDistribution {
 public:
  InstanceDistribution(int instances, Eigen::Index variants)
      : variants_(variants), cells_(static_cast<std::size_t>(instances) * static_cast<std::size_t>(variants)) {}

  int instances() const { return static_cast<int>(variants_ == 0 ? 0 : cells_.size() / static_cast<std::size_t>(variants_)); }
  Eigen::Index variants() const { return variants_; }

  /// `instance` is 1-based, matching the colors.
  const TenantSet& tenants(int instance, Eigen::Index k) const { return cells_.at(index(instance, k)); }
  TenantSet& tenants(int instance, Eigen::Index k) { return cells_.at(index(instance, k)); }

  friend bool operator==(const InstanceDistribution&, const InstanceDistribution&) = default;

 private:
  std::size_t index(int instance, Eigen::Index k) const {
    return static_cast<std::size_t>(instance - 1) * static_cast<std::size_t>(variants_) + static_cast<std::size_t>(k);
  }

  Eigen::Index variants_;
  std::vector<TenantSet> cells_;
};

InstanceDistribution distribution(const ColoringMatrix& d);

}  // namespace rvcplan
