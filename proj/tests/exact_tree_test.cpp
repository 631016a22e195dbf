#include "mlnet/exact_tree.hpp"

#include <gtest/gtest.h>

#include "generators.hpp"
#include "mlnet/errors.hpp"
#include "mlnet/exact_general.hpp"
#include "mlnet/exact_line.hpp"
#include "mlnet/pmf.hpp"
#include "mlnet/topologies.hpp"

namespace mlnet::tree {
namespace {

using testing::Gen;

double all_ones_prob(const BaseGraph& g, double q, int M) {
  return tree_config_prob(RootedTree(g), LinkConfiguration::all_ones(g.num_links()),
                          ModelParams::uniform(g, M, 1, 1.0, q));
}

TEST(ExactTreeTest, StarReferenceValues) {
  EXPECT_NEAR(all_ones_prob(star_fig7(), 0.25, 50), 0.6283739, 5e-7);
  EXPECT_NEAR(all_ones_prob(star_fig7(), 0.5, 10), 0.5413375, 5e-7);
}

TEST(ExactTreeTest, BinaryTreeReferenceValues) {
  EXPECT_NEAR(all_ones_prob(btree5(), 0.5, 10), 0.0458577, 5e-7);
  EXPECT_NEAR(all_ones_prob(btree5(), 0.29, 50), 0.4735923, 5e-7);
  EXPECT_NEAR(all_ones_prob(btree5(), 0.55, 10), 0.2194674, 5e-7);
}

// Exact rationals from tests/oracles/oracle.py.
TEST(ExactTreeTest, EdgeFactorOracle) {
  const int M = 3;
  NodeLayerDist child{binom_pmf_table(M, 0.6)};
  EXPECT_NEAR(edge_factor(M, child, true, 1.0, M, 1), 117.0 / 125, 1e-15);
  EXPECT_NEAR(edge_factor(M, child, false, 1.0, M, 1), 8.0 / 125, 1e-15);

  const BaseGraph g = path_graph(1);
  ModelParams params = ModelParams::uniform(g, M, 1, 1.0, 0.6);
  params.q[0] = 1.0 / 3.0;
  const auto dists = TreeDp(RootedTree(g, 0), params).layer_dists(LinkConfiguration::all_ones(1));
  EXPECT_NEAR(dists[0].values[M], 13.0 / 375, 1e-15);
}

TEST(ExactTreeTest, StarWithThinningAndThresholdOracle) {
  const BaseGraph g(4, {{0, 1}, {0, 2}, {0, 3}});
  ModelParams params{3, 2, {0.7, 0.7, 0.7}, {0.6, 0.5, 0.4, 0.8}};
  const double want[8] = {19631811957857.0 / 30517578125000.0, 1638071578143.0 / 30517578125000.0,
                          3977116590447.0 / 122070312500000.0, 930911765553.0 / 122070312500000.0,
                          1400214155067.0 / 7629394531250.0,  338064960933.0 / 7629394531250.0,
                          818401395357.0 / 30517578125000.0,  249169640643.0 / 30517578125000.0};
  for (NodeId root = 0; root < 4; ++root) {
    const TreeDp dp(RootedTree(g, root), params);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      EXPECT_NEAR(dp.config_prob(LinkConfiguration::from_mask(mask, 3)), want[mask], 1e-15) << root << ' ' << mask;
    }
  }
}

TEST(ExactTreeTest, RootInvariance) {
  Gen gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    const BaseGraph g = gen.tree(static_cast<std::size_t>(gen.integer(2, 9)));
    const int M = gen.integer(1, 12);
    const ModelParams params = gen.params(g, M, gen.integer(1, M));
    const auto x = gen.config(g.num_links());
    const double at_zero = TreeDp(RootedTree(g, 0), params).config_prob(x);
    for (NodeId root = 1; root < g.num_nodes(); ++root) {
      EXPECT_NEAR(TreeDp(RootedTree(g, root), params).config_prob(x), at_zero, 1e-12);
    }
  }
}

TEST(ExactTreeTest, Normalizes) {
  Gen gen(22);
  for (int trial = 0; trial < 10; ++trial) {
    const BaseGraph g = gen.tree(static_cast<std::size_t>(gen.integer(2, 11)));
    const int M = gen.integer(1, 40);
    const TreeDp dp(RootedTree(g), gen.params(g, M, gen.integer(1, std::min(M, 4))));
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.num_links()); ++mask) {
      total += dp.config_prob(LinkConfiguration::from_mask(mask, g.num_links()));
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(ExactTreeTest, WindowedKernelsMatchReferenceRecursion) {
  Gen gen(23);
  for (int trial = 0; trial < 10; ++trial) {
    const BaseGraph g = gen.tree(static_cast<std::size_t>(gen.integer(2, 7)));
    const int M = gen.integer(1, 30);
    const ModelParams params = gen.params(g, M, gen.integer(1, std::min(M, 3)));
    const RootedTree rooted(g, 0);
    const auto x = gen.config(g.num_links());

    // f_v(m) = B(m; M, q_v) prod_w g_vw(m), straight from edge_factor.
    std::vector<NodeLayerDist> ref(g.num_nodes());
    for (NodeId v : rooted.leaves_first()) {
      ref[v].values = binom_pmf_table(M, params.q[v]);
      for (NodeId w : rooted.children(v)) {
        const LinkId l = rooted.parent_link(w);
        for (int m = 0; m <= M; ++m) ref[v].values[m] *= edge_factor(m, ref[w], x[l], params.p[l], M, params.K);
      }
    }
    const auto got = TreeDp(rooted, params).layer_dists(x);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      for (int m = 0; m <= M; ++m) EXPECT_NEAR(got[v].values[m], ref[v].values[m], 1e-13);
    }
  }
}

TEST(ExactTreeTest, AgreesWithLineAndBruteForce) {
  Gen gen(24);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = gen.integer(1, 4);
    const int M = gen.integer(1, 3);
    const double q = gen.uniform(0.1, 1.0);
    const BaseGraph g = path_graph(static_cast<std::size_t>(n));
    const auto params = ModelParams::uniform(g, M, 1, 1.0, q);
    const TreeDp dp(RootedTree(g, static_cast<NodeId>(gen.integer(0, n))), params);
    const auto brute = general::brute_force_dist(g, params);
    for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
      const auto x = LinkConfiguration::from_mask(mask, static_cast<std::size_t>(n));
      EXPECT_NEAR(dp.config_prob(x), line::config_prob(x, {n, q, M}), 1e-12);
      EXPECT_NEAR(dp.config_prob(x), brute[mask], 1e-12);
    }
  }
}

TEST(ExactTreeTest, LargeLayerCountStaysNormalized) {
  // q = 1/2 and M = 1000: every link is active with probability 1 - 1e-125.
  EXPECT_NEAR(all_ones_prob(star_fig7(), 0.5, 1000), 1.0, 1e-12);
}

TEST(ExactTreeTest, RejectsNonTrees) {
  EXPECT_THROW(RootedTree(complete_graph(3)), ValidationError);
  EXPECT_THROW(RootedTree(BaseGraph(3, {{0, 1}})), ValidationError);
  EXPECT_THROW(RootedTree(path_graph(2), 5), ValidationError);
  const BaseGraph g = path_graph(2);
  EXPECT_THROW(TreeDp(RootedTree(g), ModelParams::uniform(g, 2, 3, 1.0, 0.5)), ValidationError);
}

}  // namespace
}  // namespace mlnet::tree
