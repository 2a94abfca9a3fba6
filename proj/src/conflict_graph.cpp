#include "rvcplan/conflict_graph.hpp"

#include <sstream>

namespace rvcplan {

SharingMatrix build_sharing_matrix(const VariantRequirementTable& table) {
  const auto m = static_cast<Eigen::Index>(table.tenants());
  const auto n = static_cast<Eigen::Index>(table.variants());
  SharingMatrix g(m, n, true);

  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const RequirementExpr& r = table.at(static_cast<TenantIndex>(i), static_cast<std::size_t>(k));
      if (!r.grounded()) throw Error("sharing matrix requires a grounded requirement table");
      for (Eigen::Index j = 0; j < m; ++j) {
        if (j == i) continue;
        const bool listed = r.tenants.contains(static_cast<TenantIndex>(j));
        bool forbidden = false;
        switch (r.kind) {
          case RequirementKind::kShareWithAny: break;
          case RequirementKind::kDontShareWithAny: forbidden = true; break;
          case RequirementKind::kShareWithJust: forbidden = !listed; break;
          case RequirementKind::kDontShareWith: forbidden = listed; break;
        }
        if (forbidden) g.set_pair(i, j, k, false);
      }
    }
  }
  return g;
}

namespace detail {

EdgeLabeledGraph edges_of(const std::vector<Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>>& slices,
                          std::vector<std::string> vertices, std::vector<std::string> variants, std::string name) {
  EdgeLabeledGraph g{std::move(name), std::move(vertices), std::move(variants), {}};
  const std::size_t m = g.vertices.size();
  const std::size_t n = slices.size();
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = u + 1; v < m; ++v) {
      LabeledEdge e{u, v, {}};
      for (std::size_t k = 0; k < n; ++k)
        if (slices[k](static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v))) e.label.push_back(k);
      if (e.label.empty()) continue;
      if (e.label.size() == n) e.label.clear();
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

std::vector<Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>> slices_of(const EdgeLabeledGraph& g, bool diagonal) {
  const auto m = static_cast<Eigen::Index>(g.vertices.size());
  const std::size_t n = g.variants.size();
  std::vector<Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>> slices(
      n, Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, m, false));
  for (auto& s : slices) s.matrix().diagonal().setConstant(diagonal);

  for (const auto& e : g.edges) {
    if (e.u == e.v || e.u >= g.vertices.size() || e.v >= g.vertices.size())
      throw DimensionError("edge references an invalid vertex pair");
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    const auto mark = [&](std::size_t k) {
      if (k >= n) throw DimensionError("edge label references an undeclared variant");
      slices[k](u, v) = true;
      slices[k](v, u) = true;
    };
    if (e.label.empty()) {
      for (std::size_t k = 0; k < n; ++k) mark(k);
    } else {
      for (std::size_t k : e.label) mark(k);
    }
  }
  return slices;
}

}  // namespace detail

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string export_dot(const EdgeLabeledGraph& g) {
  std::ostringstream os;
  os << "graph " << dot_quote(g.name) << " {\n";
  for (const auto& v : g.vertices) os << "  " << dot_quote(v) << ";\n";
  for (const auto& e : g.edges) {
    os << "  " << dot_quote(g.vertices.at(e.u)) << " -- " << dot_quote(g.vertices.at(e.v));
    if (!e.label.empty()) {
      std::string label;
      for (std::size_t k : e.label) {
        if (!label.empty()) label += ',';
        label += g.variants.at(k);
      }
      os << " [label=" << dot_quote(label) << "]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace rvcplan
