#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "rvcplan/conflict_graph.hpp"
#include "support/case_study.hpp"
#include "support/test_util.hpp"

namespace rvcplan {
namespace {

using testing::Cube;

VariantRequirementTable school_rvc(std::size_t r) {
  const PlanningInstance inst = testing::school_instance();
  return translate(inst.requirements, inst.functionality_map, inst.relations).at(r);
}

std::vector<std::string> labels(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back("t" + std::to_string(i));
  return out;
}

TEST(BuildSharingMatrix, AllShareWithAnyIsAllOnes) {
  const VariantRequirementTable t(0, 4, 3);
  const SharingMatrix g = build_sharing_matrix(t);
  for (Eigen::Index k = 0; k < 3; ++k) EXPECT_TRUE(g.slice(k).all());
}

TEST(BuildSharingMatrix, DontShareWithAnyIsolatesTenant) {
  VariantRequirementTable t(0, 2, 3);
  for (std::size_t k = 0; k < 3; ++k) t.at(0, k) = RequirementExpr::dont_share_with_any();
  const SharingMatrix g = build_sharing_matrix(t);
  for (Eigen::Index k = 0; k < 3; ++k) {
    EXPECT_FALSE(g(0, 1, k));
    EXPECT_FALSE(g(1, 0, k));
    EXPECT_TRUE(g(0, 0, k));
    EXPECT_TRUE(g(1, 1, k));
  }
}

TEST(BuildSharingMatrix, ShareListOnlyConstrainsItsOwner) {
  // Tenant 0 shares just with 1; tenants 1 and 2 may still share.
  VariantRequirementTable t(0, 3, 1);
  t.at(0, 0) = RequirementExpr::share_with_just({1});
  const SharingMatrix g = build_sharing_matrix(t);
  EXPECT_TRUE(g(0, 1, 0));
  EXPECT_FALSE(g(0, 2, 0));
  EXPECT_TRUE(g(1, 2, 0));
}

TEST(BuildSharingMatrix, RejectsUngroundedTable) {
  VariantRequirementTable t(0, 2, 1);
  t.at(0, 0).kind = RequirementKind::kShareWithJust;
  t.at(0, 0).partners = true;
  EXPECT_THROW(build_sharing_matrix(t), Error);
}

TEST(BuildSharingMatrix, SymmetricUnitDiagonalOnRandomTables) {
  std::mt19937 rng(11);
  for (int round = 0; round < 300; ++round) {
    const std::size_t m = 1 + rng() % 8;
    const std::size_t n = 1 + rng() % 4;
    const SharingMatrix g = build_sharing_matrix(testing::random_table(m, n, rng));
    EXPECT_TRUE(g.is_symmetric());
    EXPECT_TRUE(g.has_canonical_diagonal());
  }
}

TEST(BuildSharingMatrix, MatchesPairwisePredicate) {
  std::mt19937 rng(12);
  for (int round = 0; round < 300; ++round) {
    const std::size_t m = 1 + rng() % 8;
    const std::size_t n = 1 + rng() % 4;
    const VariantRequirementTable t = testing::random_table(m, n, rng);
    EXPECT_EQ(testing::to_cube(build_sharing_matrix(t)), testing::pairwise_sharing(t));
  }
}

TEST(BuildSharingMatrix, EquivariantUnderTenantPermutation) {
  std::mt19937 rng(13);
  for (int round = 0; round < 100; ++round) {
    const std::size_t m = 2 + rng() % 6;
    const std::size_t n = 1 + rng() % 3;
    const VariantRequirementTable t = testing::random_table(m, n, rng);
    std::vector<TenantIndex> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    VariantRequirementTable moved(0, m, n);
    for (TenantIndex i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        RequirementExpr e = t.at(i, k);
        e.tenants.clear();
        for (TenantIndex x : t.at(i, k).tenants) e.tenants.insert(perm[x]);
        moved.at(perm[i], k) = e;
      }
    const SharingMatrix g = build_sharing_matrix(t);
    const SharingMatrix h = build_sharing_matrix(moved);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          EXPECT_EQ(g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), k),
                    h(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]), k));
  }
}

TEST(Invert, AllOnesBecomesAllZeros) {
  const SharingMatrix g(5, 2, true);
  const ConflictMatrix c = invert(g);
  for (Eigen::Index k = 0; k < 2; ++k) EXPECT_FALSE(c.slice(k).any());
  EXPECT_TRUE(c.has_canonical_diagonal());
}

TEST(Invert, IsAnInvolution) {
  std::mt19937 rng(14);
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = 1 + rng() % 8;
    const std::size_t n = 1 + rng() % 4;
    const SharingMatrix g = build_sharing_matrix(testing::random_table(m, n, rng));
    const ConflictMatrix c = invert(g);
    EXPECT_TRUE(c.is_symmetric());
    EXPECT_TRUE(c.has_canonical_diagonal());
    EXPECT_EQ(invert(c), g);
    for (Eigen::Index k = 0; k < g.variants(); ++k) EXPECT_TRUE((c.slice(k) != g.slice(k)).all());
  }
}

TEST(EdgeLabeledGraph, CompleteGraphIsUnlabeled) {
  const SharingMatrix g(4, 3, true);
  const EdgeLabeledGraph graph = to_edge_labeled(g, labels(4), {"a", "b", "c"});
  EXPECT_EQ(graph.edges.size(), 6u);
  for (const auto& e : graph.edges) {
    EXPECT_LT(e.u, e.v);
    EXPECT_TRUE(e.label.empty());
  }
}

TEST(EdgeLabeledGraph, SingleLabeledEdge) {
  ConflictMatrix c(3, 4, false);
  c.set_pair(0, 1, 2, true);
  const EdgeLabeledGraph graph = to_edge_labeled(c, labels(3), {"a", "b", "c", "d"});
  ASSERT_EQ(graph.edges.size(), 1u);
  EXPECT_EQ(graph.edges[0], (LabeledEdge{0, 1, {2}}));
}

TEST(EdgeLabeledGraph, RoundTripIsLossless) {
  std::mt19937 rng(15);
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = 1 + rng() % 8;
    const std::size_t n = 1 + rng() % 4;
    const SharingMatrix g = build_sharing_matrix(testing::random_table(m, n, rng));
    std::vector<std::string> variants;
    for (std::size_t k = 0; k < n; ++k) variants.push_back("v" + std::to_string(k));
    const EdgeLabeledGraph sg = to_edge_labeled(g, labels(m), variants);
    EXPECT_EQ(from_edge_labeled<SharingTag>(sg), g);
    const ConflictMatrix c = invert(g);
    EXPECT_EQ(from_edge_labeled<ConflictTag>(to_edge_labeled(c, labels(m), variants)), c);
  }
}

TEST(EdgeLabeledGraph, ComplementedLabelsBetweenSharingAndConflict) {
  // An edge labeled L in one view appears labeled with the complement of L in
  // the other; unlabeled edges disappear and missing edges become unlabeled.
  const VariantRequirementTable t = school_rvc(0);
  const SharingMatrix g = build_sharing_matrix(t);
  const std::vector<std::string> variants{"A", "B", "C", "D"};
  const EdgeLabeledGraph share = to_edge_labeled(g, testing::kSchoolLabels, variants);
  const EdgeLabeledGraph conflict = to_edge_labeled(invert(g), testing::kSchoolLabels, variants);
  const auto find = [](const EdgeLabeledGraph& graph, std::size_t u, std::size_t v) -> const LabeledEdge* {
    for (const auto& e : graph.edges)
      if (e.u == u && e.v == v) return &e;
    return nullptr;
  };
  for (std::size_t u = 0; u < 6; ++u)
    for (std::size_t v = u + 1; v < 6; ++v) {
      const LabeledEdge* s = find(share, u, v);
      const LabeledEdge* c = find(conflict, u, v);
      if (s == nullptr) {
        ASSERT_NE(c, nullptr);
        EXPECT_TRUE(c->label.empty());
      } else if (s->label.empty()) {
        EXPECT_EQ(c, nullptr);
      } else {
        ASSERT_NE(c, nullptr);
        std::vector<std::size_t> complement;
        for (std::size_t k = 0; k < 4; ++k)
          if (std::find(s->label.begin(), s->label.end(), k) == s->label.end()) complement.push_back(k);
        EXPECT_EQ(c->label, complement);
      }
    }
}

TEST(ExportDot, SingleVertex) {
  EdgeLabeledGraph g{"solo", {"Only"}, {"X"}, {}};
  EXPECT_EQ(export_dot(g), "graph \"solo\" {\n  \"Only\";\n}\n");
}

TEST(ExportDot, UnlabeledEdgeHasNoAttribute) {
  EdgeLabeledGraph g{"pair", {"a", "b"}, {"X", "Y"}, {{0, 1, {}}}};
  EXPECT_EQ(export_dot(g), "graph \"pair\" {\n  \"a\";\n  \"b\";\n  \"a\" -- \"b\";\n}\n");
}

TEST(ExportDot, QuotesSpecialCharacters) {
  EdgeLabeledGraph g{"q\"x", {"a\\b"}, {"X"}, {}};
  EXPECT_EQ(export_dot(g), "graph \"q\\\"x\" {\n  \"a\\\\b\";\n}\n");
}

TEST(ExportDot, CaseStudyConflictGraphGolden) {
  const ConflictMatrix c = invert(build_sharing_matrix(school_rvc(0)));
  const std::string text = export_dot(to_edge_labeled(c, testing::kSchoolLabels, {"A", "B", "C", "D"}, "RVC1 conflict"));
  EXPECT_EQ(text, testing::read_file(testing::source_path("tests/golden/rvc1_conflict.dot")));
}

}  // namespace
}  // namespace rvcplan
