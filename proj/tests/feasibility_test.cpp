#include "mlnet/feasibility.hpp"

#include <gtest/gtest.h>

#include "generators.hpp"
#include "mlnet/errors.hpp"
#include "mlnet/exact_general.hpp"

namespace mlnet::feasibility {
namespace {

using testing::Gen;

void expect_valid_cover(const BaseGraph& g, const CliqueCover& cover) {
  std::vector<bool> covered(g.num_links(), false);
  for (const auto& clique : cover.cliques) {
    for (std::size_t a = 0; a < clique.size(); ++a) {
      for (std::size_t b = a + 1; b < clique.size(); ++b) {
        const auto l = g.find_link(clique[a], clique[b]);
        ASSERT_TRUE(l.has_value()) << "clique uses a missing link";
        covered[*l] = true;
      }
    }
  }
  for (LinkId l = 0; l < g.num_links(); ++l) EXPECT_TRUE(covered[l]) << "link " << l << " uncovered";
}

// Exhaustive minimum over subsets of all cliques (any size >= 2).
std::size_t brute_min_cover(const BaseGraph& g) {
  const auto adj = g.adjacency_masks();
  std::vector<std::uint64_t> clique_links;
  for (std::uint64_t s = 1; s < (1u << g.num_nodes()); ++s) {
    if (std::popcount(s) < 2) continue;
    bool complete = true;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (((s >> v) & 1U) && (adj[v] | (1u << v)) != (adj[v] | s)) complete = false;
    }
    if (!complete) continue;
    std::uint64_t links = 0;
    for (LinkId l = 0; l < g.num_links(); ++l) {
      if (((s >> g.link(l).u) & 1U) && ((s >> g.link(l).v) & 1U)) links |= 1u << l;
    }
    clique_links.push_back(links);
  }
  const std::uint64_t all = (std::uint64_t{1} << g.num_links()) - 1;
  std::size_t best = g.num_links();
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << clique_links.size()); ++pick) {
    if (static_cast<std::size_t>(std::popcount(pick)) >= best) continue;
    std::uint64_t cov = 0;
    for (std::size_t i = 0; i < clique_links.size(); ++i) {
      if ((pick >> i) & 1U) cov |= clique_links[i];
    }
    if (cov == all) best = static_cast<std::size_t>(std::popcount(pick));
  }
  return best;
}

TEST(FeasibilityTest, InducedSubgraph) {
  const BaseGraph tri = complete_graph(3);
  EXPECT_EQ(induced_subgraph(tri, LinkConfiguration(3)).num_links(), 0u);
  EXPECT_EQ(induced_subgraph(tri, LinkConfiguration::all_ones(3)), tri);
  const BaseGraph path = induced_subgraph(tri, LinkConfiguration::parse("110"));
  EXPECT_EQ(path.num_nodes(), 3u);
  EXPECT_TRUE(path.is_tree());
  EXPECT_THROW(induced_subgraph(tri, LinkConfiguration(2)), ValidationError);
}

TEST(FeasibilityTest, SmallCovers) {
  EXPECT_EQ(min_clique_edge_cover(complete_graph(3)).size(), 1u);
  EXPECT_EQ(min_clique_edge_cover(path_graph(2)).size(), 2u);
  const BaseGraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(min_clique_edge_cover(c4).size(), 4u);
  const BaseGraph k4e(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_EQ(min_clique_edge_cover(k4e).size(), 2u);
  EXPECT_EQ(min_clique_edge_cover(BaseGraph(3, {})).size(), 0u);
  EXPECT_THROW(min_clique_edge_cover(complete_graph(7)), SizeCapError);
}

TEST(FeasibilityTest, CoversAreMinimumAndValid) {
  Gen gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const BaseGraph g = gen.graph(static_cast<std::size_t>(gen.integer(2, 6)), gen.uniform(0.3, 0.9));
    if (g.num_links() > 12) continue;
    const auto cover = min_clique_edge_cover(g);
    expect_valid_cover(g, cover);
    EXPECT_EQ(cover.size(), brute_min_cover(g));
  }
}

TEST(FeasibilityTest, TriangleFreeGraphsNeedOneCliquePerLink) {
  Gen gen(42);
  for (int trial = 0; trial < 20; ++trial) {
    const BaseGraph g = gen.tree(static_cast<std::size_t>(gen.integer(2, 15)));
    EXPECT_EQ(min_clique_edge_cover(g).size(), g.num_links());
  }
  const BaseGraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  EXPECT_EQ(min_clique_edge_cover(c5).size(), 5u);
}

TEST(FeasibilityTest, SingleLayerNeedsClique) {
  const BaseGraph k4 = complete_graph(4);  // links 01 02 03 12 13 23
  EXPECT_TRUE(mcc_feasible(LinkConfiguration::parse("110100"), 1, k4));   // triangle 012
  EXPECT_FALSE(mcc_feasible(LinkConfiguration::parse("110011"), 1, k4));  // 4-cycle
  EXPECT_FALSE(mcc_feasible(LinkConfiguration::parse("110000"), 1, k4));  // path
  EXPECT_TRUE(mcc_feasible(LinkConfiguration::parse("000000"), 1, k4));

  const auto one_edge = mcc_check(LinkConfiguration::parse("100"), 1, complete_graph(3));
  EXPECT_TRUE(one_edge.feasible);
  ASSERT_EQ(one_edge.witness.size(), 1u);
  EXPECT_EQ(one_edge.witness.cliques[0], (std::vector<NodeId>{0, 1}));
}

TEST(FeasibilityTest, ManyLayersMakeEverythingFeasibleAndMonotone) {
  const BaseGraph k5 = complete_graph(5);
  Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = gen.config(k5.num_links());
    EXPECT_TRUE(mcc_feasible(x, 10, k5));
    bool prev = false;
    for (int M = 1; M <= 10; ++M) {
      const bool now = mcc_feasible(x, M, k5);
      EXPECT_TRUE(!prev || now);
      prev = now;
    }
  }
  EXPECT_THROW(mcc_feasible(LinkConfiguration::parse("11"), 2, path_graph(2)), ValidationError);
}

TEST(FeasibilityTest, AgreesWithPositiveProbability) {
  for (std::size_t n : {3u, 4u}) {
    const BaseGraph g = complete_graph(n);
    for (int M = 1; M <= 3; ++M) {
      const auto dist = general::brute_force_dist(g, ModelParams::uniform(g, M, 1, 1.0, 0.5));
      for (std::uint64_t mask = 0; mask < dist.probs.size(); ++mask) {
        EXPECT_EQ(mcc_feasible(LinkConfiguration::from_mask(mask, g.num_links()), M, g), dist[mask] > 0.0)
            << n << ' ' << M << ' ' << mask;
      }
    }
  }
}

}  // namespace
}  // namespace mlnet::feasibility
