#include "rvcplan/oracle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace rvcplan {

std::vector<Violation> check_valid(const SharingMatrix& sharing, const ColoringMatrix& d) {
  if (sharing.tenants() != d.tenants() || sharing.variants() != d.variants())
    throw DimensionError("coloring and sharing matrix dimensions disagree");

  std::vector<Violation> out;
  for (Eigen::Index k = 0; k < d.variants(); ++k)
    for (Eigen::Index i = 0; i < d.tenants(); ++i)
      for (Eigen::Index j = i + 1; j < d.tenants(); ++j)
        if (d(i, k) == d(j, k) && !sharing(i, j, k)) out.push_back({i, j, k, d(i, k)});
  return out;
}

namespace {

struct BudgetExhausted {};

class ExactSearch {
 public:
  ExactSearch(const SharingMatrix& sharing, std::uint64_t max_nodes)
      : sharing_(sharing),
        max_nodes_(max_nodes),
        grid_(ColoringMatrix::Grid::Zero(sharing.tenants(), sharing.variants())) {}

  /// True if every variant column can be colored with at most `h` colors.
  bool feasible(int h) {
    for (Eigen::Index k = 0; k < sharing_.variants(); ++k)
      if (!color_column(k, 0, 0, h)) return false;
    return true;
  }

  const ColoringMatrix::Grid& grid() const { return grid_; }
  std::uint64_t explored() const { return explored_; }

 private:
  bool color_column(Eigen::Index k, Eigen::Index i, int used, int h) {
    if (i == sharing_.tenants()) return true;
    const int limit = std::min(h, used + 1);
    for (int c = 1; c <= limit; ++c) {
      if (++explored_ > max_nodes_) throw BudgetExhausted{};
      if (!fits(k, i, c)) continue;
      grid_(i, k) = c;
      if (color_column(k, i + 1, std::max(used, c), h)) return true;
    }
    grid_(i, k) = 0;
    return false;
  }

  bool fits(Eigen::Index k, Eigen::Index i, int c) const {
    for (Eigen::Index j = 0; j < i; ++j)
      if (grid_(j, k) == c && !sharing_(i, j, k)) return false;
    return true;
  }

  const SharingMatrix& sharing_;
  std::uint64_t max_nodes_;
  std::uint64_t explored_ = 0;
  ColoringMatrix::Grid grid_;
};

ColoringMatrix isolated_coloring(Eigen::Index m, Eigen::Index n) {
  ColoringMatrix::Grid g(m, n);
  for (Eigen::Index i = 0; i < m; ++i) g.row(i).setConstant(static_cast<int>(i + 1));
  return ColoringMatrix(std::move(g));
}

}  // namespace

OracleResult exact_min_instances(const SharingMatrix& sharing, const SearchBudget& budget) {
  const Eigen::Index m = sharing.tenants();
  const Eigen::Index n = sharing.variants();
  if (m < 1 || n < 1) throw DimensionError("oracle needs at least one tenant and one variant");

  OracleResult result;
  result.upper_bound = static_cast<int>(m);
  result.witness = isolated_coloring(m, n);
  if (m > budget.max_tenants) return result;

  ExactSearch search(sharing, budget.max_nodes);
  try {
    for (int h = 1; h <= static_cast<int>(m); ++h) {
      if (search.feasible(h)) {
        result.status = OracleStatus::kOptimal;
        result.h_star = h;
        result.lower_bound = h;
        result.upper_bound = h;
        result.witness = ColoringMatrix(search.grid());
        break;
      }
      result.lower_bound = h + 1;
    }
  } catch (const BudgetExhausted&) {
    result.status = OracleStatus::kInconclusive;
  }
  result.explored = search.explored();
  return result;
}

SharingMatrix gen_random_instance(Eigen::Index tenants, Eigen::Index variants, double density, std::uint64_t seed) {
  if (tenants < 1) throw std::invalid_argument("tenant count must be at least 1");
  if (variants < 1) throw std::invalid_argument("variant count must be at least 1");
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");

  // std::bernoulli_distribution is implementation-defined; this draw is not.
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  SharingMatrix g(tenants, variants, true);
  for (Eigen::Index k = 0; k < variants; ++k)
    for (Eigen::Index i = 0; i < tenants; ++i)
      for (Eigen::Index j = i + 1; j < tenants; ++j)
        if (uniform() < density) g.set_pair(i, j, k, false);
  return g;
}

}  // namespace rvcplan
