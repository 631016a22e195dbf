#include "mlnet/montecarlo.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "generators.hpp"
#include "mlnet/errors.hpp"
#include "mlnet/exact_general.hpp"
#include "mlnet/exact_line.hpp"
#include "mlnet/pmf.hpp"

namespace mlnet::mc {
namespace {

void expect_within(const Estimate& e, double exact, double k_se = 4.0) {
  EXPECT_LE(std::abs(e.mean - exact), k_se * e.std_error + 1e-12) << "mean " << e.mean << " exact " << exact;
}

TEST(MonteCarloTest, SplitMixStreams) {
  auto a = SplitMix64::stream(7, 3);
  auto b = SplitMix64::stream(7, 3);
  auto c = SplitMix64::stream(7, 4);
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_TRUE(a.bernoulli(1.0));
  EXPECT_FALSE(a.bernoulli(0.0));
}

TEST(MonteCarloTest, EstimateFromSums) {
  const auto e = estimate_from_sums(4, 2, 2);
  EXPECT_DOUBLE_EQ(e.mean, 0.5);
  EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(1.0 / 3.0) / 2.0);
  EXPECT_EQ(estimate_from_sums(1, 1, 1).std_error, 0.0);
}

TEST(MonteCarloTest, ThreadCountDoesNotChangeResults) {
  const BaseGraph g = complete_graph(4);
  const auto params = ModelParams::uniform(g, 3, 1, 0.7, 0.5);
  SimConfig cfg;
  cfg.replications = 20000;
  cfg.seed = 99;
  cfg.config_counts = true;
  cfg.cluster_nodes = {0, 2};
  cfg.active_link_count = true;
  cfg.multiplicity_links = {0, 5};
  cfg.threads = 1;
  const auto serial = simulate(g, params, cfg);
  cfg.threads = 4;
  EXPECT_EQ(serial, simulate(g, params, cfg));
  cfg.threads = 3;
  EXPECT_EQ(serial, simulate(g, params, cfg));
  cfg.seed = 100;
  EXPECT_FALSE(serial == simulate(g, params, cfg));
}

TEST(MonteCarloTest, SingleLink) {
  const BaseGraph g = path_graph(1);
  SimConfig cfg;
  cfg.seed = 5;
  const auto r = simulate(g, ModelParams::uniform(g, 2, 1, 1.0, 0.5), cfg);
  expect_within(r.link_active[0], 0.4375);
  EXPECT_EQ(r.replications, 100000u);

  const auto full = simulate(g, ModelParams::uniform(g, 3, 3, 1.0, 1.0), cfg);
  EXPECT_EQ(full.link_active[0].mean, 1.0);
  EXPECT_EQ(full.link_active[0].std_error, 0.0);
}

TEST(MonteCarloTest, ConfigLawMatchesBruteForce) {
  testing::Gen gen(404);
  for (int trial = 0; trial < 4; ++trial) {
    const BaseGraph g = gen.graph(4, 0.7);
    const auto params = gen.params(g, gen.integer(1, 3), gen.integer(1, 2));
    const auto exact = general::brute_force_dist(g, params);
    SimConfig cfg;
    cfg.replications = 40000;
    cfg.seed = 1000 + static_cast<std::uint64_t>(trial);
    cfg.config_counts = true;
    const auto r = simulate(g, params, cfg);
    for (std::uint64_t mask = 0; mask < exact.probs.size(); ++mask) {
      // Four standard errors, floored for masks with tiny probability.
      const auto e = r.config_prob(mask);
      const double se = std::max(e.std_error, std::sqrt(exact[mask] * (1 - exact[mask]) / 40000.0));
      EXPECT_LE(std::abs(e.mean - exact[mask]), 4.5 * se + 1e-4) << "trial " << trial << " mask " << mask;
    }
  }
}

TEST(MonteCarloTest, MultiplicityMarginalIsBinomial) {
  const BaseGraph g = path_graph(2);
  const ModelParams params{12, 1, {0.8, 0.6}, {0.7, 0.9, 0.5}};
  SimConfig cfg;
  cfg.replications = 50000;
  cfg.seed = 2024;
  const auto table = empirical_multiplicity_joint(g, params, cfg, {0});
  const double r = 0.8 * 0.7 * 0.9;
  double chi2 = 0.0;
  int bins = 0;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (int w = 0; w <= params.M; ++w) {
    pooled_obs += static_cast<double>(table.counts[static_cast<std::size_t>(w)]);
    pooled_exp += binom_pmf(w, params.M, r) * 50000.0;
    if (pooled_exp >= 5.0 || w == params.M) {
      chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
      ++bins;
      pooled_obs = pooled_exp = 0.0;
    }
  }
  const boost::math::chi_squared dist(bins - 1);
  EXPECT_LT(chi2, boost::math::quantile(dist, 0.999));
}

TEST(MonteCarloTest, MultiplicityJointStructure) {
  // Disjoint links are independent.
  const BaseGraph g(4, {{0, 1}, {2, 3}});
  const auto params = ModelParams::uniform(g, 2, 1, 1.0, 0.6);
  SimConfig cfg;
  cfg.replications = 60000;
  cfg.seed = 8;
  const auto table = empirical_multiplicity_joint(g, params, cfg, {0, 1});
  const auto pmf = table.pmf();
  ASSERT_EQ(pmf.size(), 9u);
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      const std::vector<int> w{a, b};
      const double want = binom_pmf(a, 2, 0.36) * binom_pmf(b, 2, 0.36);
      EXPECT_NEAR(pmf[table.index(w)], want, 4 * std::sqrt(want * (1 - want) / 60000.0) + 1e-4);
    }
  }

  // One layer: W is the 0/1 layer indicator.
  const BaseGraph tri = complete_graph(3);
  const auto one = empirical_multiplicity_joint(tri, ModelParams::uniform(tri, 1, 1, 1.0, 0.5), cfg, {0, 1, 2});
  const auto p1 = one.pmf();
  // Two of three links present forces the third.
  EXPECT_EQ(p1[one.index(std::vector<int>{1, 1, 0})], 0.0);
  EXPECT_NEAR(p1[one.index(std::vector<int>{1, 1, 1})], 0.125, 0.01);
  EXPECT_NEAR(p1[one.index(std::vector<int>{0, 0, 0})], 0.5, 0.01);
}

TEST(MonteCarloTest, NonIdenticalLayers) {
  const BaseGraph g = path_graph(1);
  const NonIdenticalParams params{1, {{0.3}, {0.9}, {0.5}}, {{0.5, 0.8}, {1.0, 0.2}, {0.6, 0.6}}};
  SimConfig cfg;
  cfg.seed = 77;
  const auto r = simulate(g, params, cfg);
  const double miss = (1 - 0.3 * 0.4) * (1 - 0.9 * 0.2) * (1 - 0.5 * 0.36);
  expect_within(r.link_active[0], 1 - miss);
}

TEST(MonteCarloTest, LineClusterAgreesWithExact) {
  const int n = 20;
  const BaseGraph g = path_graph(n);
  const line::LineSpec spec{n, 0.6, 5};
  SimConfig cfg;
  cfg.seed = 31;
  cfg.cluster_nodes = {0, 10};
  cfg.active_link_count = true;
  const auto r = simulate(g, ModelParams::uniform(g, 5, 1, 1.0, 0.6), cfg);
  expect_within(r.cluster_size.at(0), line::expected_cluster_size(n, 1, spec));
  expect_within(r.cluster_size.at(10), line::expected_cluster_size(n, 11, spec));
  expect_within(*r.active_links, line::expected_active_links(n, spec));
}

TEST(MonteCarloTest, TargetConfigurations) {
  const BaseGraph g = path_graph(30);
  SimConfig cfg;
  cfg.seed = 3;
  cfg.replications = 20000;
  cfg.target_configs = {LinkConfiguration(30), LinkConfiguration::all_ones(30)};
  const auto params = ModelParams::uniform(g, 4, 1, 1.0, 0.9);
  const auto r = simulate(g, params, cfg);
  ASSERT_EQ(r.target_config_prob.size(), 2u);
  const line::LineSpec spec{30, 0.9, 4};
  expect_within(r.target_config_prob[1], line::config_prob(LinkConfiguration::all_ones(30), spec));
  EXPECT_EQ(r.target_config_prob[0].mean, 0.0);
}

TEST(MonteCarloTest, RejectsInvalidRequests) {
  const BaseGraph g = path_graph(21);
  const auto params = ModelParams::uniform(g, 2, 1, 1.0, 0.5);
  SimConfig cfg;
  cfg.config_counts = true;
  EXPECT_THROW(simulate(g, params, cfg), ValidationError);
  cfg = SimConfig{};
  cfg.cluster_nodes = {22};
  EXPECT_THROW(simulate(g, params, cfg), ValidationError);
  cfg = SimConfig{};
  cfg.multiplicity_links = {0, 1, 2, 3};
  EXPECT_THROW(simulate(g, params, cfg), ValidationError);
  cfg = SimConfig{};
  cfg.replications = 0;
  EXPECT_THROW(simulate(g, params, cfg), ValidationError);
  cfg = SimConfig{};
  cfg.target_configs = {LinkConfiguration(3)};
  EXPECT_THROW(simulate(g, params, cfg), ValidationError);
  auto bad = params;
  bad.q[0] = 1.5;
  EXPECT_THROW(simulate(g, bad, SimConfig{}), ValidationError);
}

}  // namespace
}  // namespace mlnet::mc
