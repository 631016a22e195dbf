#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mlnet/graph.hpp"
#include "mlnet/model.hpp"

namespace mlnet::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

  // Probability in (0, 1], hitting exactly 1 about one time in five.
  double prob(double lo = 0.05) { return coin(0.2) ? 1.0 : uniform(lo, 1.0); }

  BaseGraph graph(std::size_t nodes, double edge_prob) {
    std::vector<Link> links;
    for (NodeId u = 0; u < nodes; ++u) {
      for (NodeId v = u + 1; v < nodes; ++v) {
        if (coin(edge_prob)) links.push_back({u, v});
      }
    }
    return BaseGraph(nodes, std::move(links));
  }

  // Uniform random recursive tree with shuffled link order.
  BaseGraph tree(std::size_t nodes) {
    std::vector<Link> links;
    for (NodeId v = 1; v < nodes; ++v) {
      const auto parent = static_cast<NodeId>(integer(0, static_cast<int>(v) - 1));
      links.push_back(coin() ? Link{parent, v} : Link{v, parent});
    }
    std::shuffle(links.begin(), links.end(), eng_);
    return BaseGraph(nodes, std::move(links));
  }

  ModelParams params(const BaseGraph& g, int M, int K) {
    ModelParams p{M, K, {}, {}};
    for (std::size_t l = 0; l < g.num_links(); ++l) p.p.push_back(prob(0.2));
    for (std::size_t v = 0; v < g.num_nodes(); ++v) p.q.push_back(prob(0.2));
    return p;
  }

  LinkConfiguration config(std::size_t num_links) {
    LinkConfiguration x(num_links);
    for (std::size_t l = 0; l < num_links; ++l) x.set(l, coin());
    return x;
  }

 private:
  std::mt19937_64 eng_;
};

// Every labelled simple graph on n nodes, in link-mask order.
inline std::vector<BaseGraph> all_graphs(std::size_t n) {
  std::vector<Link> pairs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  std::vector<BaseGraph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Link> links;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if ((mask >> i) & 1U) links.push_back(pairs[i]);
    }
    out.emplace_back(n, std::move(links));
  }
  return out;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace mlnet::testing
