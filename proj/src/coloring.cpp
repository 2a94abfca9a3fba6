#include "rvcplan/coloring.hpp"

#include "rvcplan/error.hpp"

namespace rvcplan {

ColoringMatrix::ColoringMatrix(Grid grid) : grid_(std::move(grid)) {
  if (grid_.size() > 0) {
    if (grid_.minCoeff() < 1) throw DimensionError("instance ids start at 1");
    instances_ = grid_.maxCoeff();
  }
}

bool ColoringMatrix::has_contiguous_colors() const {
  std::vector<bool> seen(static_cast<std::size_t>(instances_) + 1, false);
  for (Eigen::Index i = 0; i < grid_.size(); ++i) seen[static_cast<std::size_t>(grid_.data()[i])] = true;
  for (int c = 1; c <= instances_; ++c)
    if (!seen[static_cast<std::size_t>(c)]) return false;
  return true;
}

ColoringMatrix color(const ConflictMatrix& conflicts) {
  const Eigen::Index m = conflicts.tenants();
  const Eigen::Index n = conflicts.variants();
  if (m < 1 || n < 1) throw DimensionError("coloring needs at least one tenant and one variant");

  ColoringMatrix::Grid d = ColoringMatrix::Grid::Zero(m, n);
  d.row(0).setOnes();
  int used = 1;

  for (Eigen::Index i = 1; i < m; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& slice = conflicts.slice(k);
      int chosen = 0;
      for (int f = 1; f <= used && chosen == 0; ++f) {
        bool blocked = false;
        for (Eigen::Index j = 0; j < i && !blocked; ++j) blocked = d(j, k) == f && slice(i, j);
        if (!blocked) chosen = f;
      }
      d(i, k) = chosen != 0 ? chosen : ++used;
    }
  }
  return ColoringMatrix(std::move(d));
}

int instance_count(const ColoringMatrix& d) { return d.instances(); }

InstanceDistribution distribution(const ColoringMatrix& d) {
  InstanceDistribution out(d.instances(), d.variants());
  for (Eigen::Index i = 0; i < d.tenants(); ++i)
    for (Eigen::Index k = 0; k < d.variants(); ++k) out.tenants(d(i, k), k).insert(static_cast<TenantIndex>(i));
  return out;
}

}  // namespace rvcplan
