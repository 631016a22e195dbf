#include "mlnet/exact_general.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "mlnet/errors.hpp"

namespace mlnet::general {

namespace {

void check_enum_caps(const BaseGraph& g) {
  if (g.num_links() > kMaxEnumLinks) {
    throw SizeCapError("enumeration supports at most " + std::to_string(kMaxEnumLinks) + " links, got " +
                       std::to_string(g.num_links()));
  }
  if (g.num_nodes() > kMaxEnumNodes) {
    throw SizeCapError("enumeration supports at most " + std::to_string(kMaxEnumNodes) + " nodes, got " +
                       std::to_string(g.num_nodes()));
  }
}

std::vector<std::uint64_t> link_endpoint_masks(const BaseGraph& g) {
  std::vector<std::uint64_t> masks;
  for (const auto& [u, v] : g.links()) masks.push_back((std::uint64_t{1} << u) | (std::uint64_t{1} << v));
  return masks;
}

void subset_sum(std::vector<double>& f, std::size_t bits) {
  for (std::size_t b = 0; b < bits; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t s = 0; s < f.size(); ++s) {
      if (s & bit) f[s] += f[s ^ bit];
    }
  }
}

void moebius(std::vector<double>& f, std::size_t bits) {
  for (std::size_t b = 0; b < bits; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t s = 0; s < f.size(); ++s) {
      if (s & bit) f[s] -= f[s ^ bit];
    }
  }
}

// Single-layer outcomes (layer link mask, probability) by full enumeration of
// the random node and link variables; variables with probability 1 are fixed.
std::vector<std::pair<std::uint64_t, double>> layer_outcomes(const BaseGraph& g, const std::vector<double>& p,
                                                             const std::vector<double>& q) {
  std::vector<NodeId> random_nodes;
  std::uint64_t fixed_active = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (q[v] >= 1.0) fixed_active |= std::uint64_t{1} << v;
    else if (q[v] > 0.0) random_nodes.push_back(v);
  }
  std::vector<LinkId> random_links;
  std::uint64_t fixed_links = 0;
  for (LinkId l = 0; l < g.num_links(); ++l) {
    if (p[l] >= 1.0) fixed_links |= std::uint64_t{1} << l;
    else if (p[l] > 0.0) random_links.push_back(l);
  }
  if (random_nodes.size() + random_links.size() > kMaxBruteForceBits) {
    throw SizeCapError("brute force supports at most " + std::to_string(kMaxBruteForceBits) +
                       " random variables per layer");
  }
  const auto endpoints = link_endpoint_masks(g);

  std::vector<double> by_mask(std::size_t{1} << g.num_links(), 0.0);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << random_nodes.size()); ++a) {
    std::uint64_t active = fixed_active;
    double node_weight = 1.0;
    for (std::size_t i = 0; i < random_nodes.size(); ++i) {
      const NodeId v = random_nodes[i];
      if ((a >> i) & 1U) {
        active |= std::uint64_t{1} << v;
        node_weight *= q[v];
      } else {
        node_weight *= 1.0 - q[v];
      }
    }
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << random_links.size()); ++b) {
      std::uint64_t surviving = fixed_links;
      double weight = node_weight;
      for (std::size_t i = 0; i < random_links.size(); ++i) {
        const LinkId l = random_links[i];
        if ((b >> i) & 1U) {
          surviving |= std::uint64_t{1} << l;
          weight *= p[l];
        } else {
          weight *= 1.0 - p[l];
        }
      }
      std::uint64_t layer = 0;
      for (LinkId l = 0; l < g.num_links(); ++l) {
        if (((surviving >> l) & 1U) && (active & endpoints[l]) == endpoints[l]) layer |= std::uint64_t{1} << l;
      }
      by_mask[layer] += weight;
    }
  }
  std::vector<std::pair<std::uint64_t, double>> out;
  for (std::uint64_t s = 0; s < by_mask.size(); ++s) {
    if (by_mask[s] > 0.0) out.emplace_back(s, by_mask[s]);
  }
  return out;
}

// Layer-by-layer propagation of capped multiplicities min(W_l, K), stored as
// base-(K+1) digits.
ConfigDistribution propagate_layers(const BaseGraph& g, int K,
                                    const std::vector<std::vector<std::pair<std::uint64_t, double>>>& layers) {
  const std::size_t E = g.num_links();
  const std::size_t base = static_cast<std::size_t>(K) + 1;
  std::size_t num_states = 1;
  std::vector<std::size_t> place(E);
  for (std::size_t l = 0; l < E; ++l) {
    place[l] = num_states;
    if (num_states > kMaxBruteForceStates / base) {
      throw SizeCapError("brute force state space (K+1)^|E| exceeds " + std::to_string(kMaxBruteForceStates));
    }
    num_states *= base;
  }
  std::vector<double> state(num_states, 0.0);
  state[0] = 1.0;
  std::vector<double> next(num_states);
  for (const auto& outcomes : layers) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < num_states; ++s) {
      if (state[s] == 0.0) continue;
      for (const auto& [mask, prob] : outcomes) {
        std::size_t t = s;
        for (std::size_t l = 0; l < E; ++l) {
          if (((mask >> l) & 1U) && (s / place[l]) % base < static_cast<std::size_t>(K)) t += place[l];
        }
        next[t] += state[s] * prob;
      }
    }
    state.swap(next);
  }
  ConfigDistribution out{E, std::vector<double>(std::size_t{1} << E, 0.0)};
  for (std::size_t s = 0; s < num_states; ++s) {
    if (state[s] == 0.0) continue;
    std::uint64_t x = 0;
    for (std::size_t l = 0; l < E; ++l) {
      if ((s / place[l]) % base == static_cast<std::size_t>(K)) x |= std::uint64_t{1} << l;
    }
    out.probs[x] += state[s];
  }
  return out;
}

}  // namespace

double ConfigDistribution::total() const {
  double sum = 0.0;
  for (double p : probs) sum += p;
  return sum;
}

ConfigDistribution single_layer_dist(const BaseGraph& g, const ModelParams& params) {
  check_enum_caps(g);
  const auto endpoints = link_endpoint_masks(g);
  const std::size_t E = g.num_links();
  ConfigDistribution out{E, std::vector<double>(std::size_t{1} << E, 0.0)};

  // For each activation pattern, links with both endpoints active form an
  // independent Bernoulli(p) product; expand it link by link.
  std::vector<std::pair<std::uint64_t, double>> expansion;
  std::vector<std::pair<std::uint64_t, double>> scratch;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << g.num_nodes()); ++a) {
    double weight = 1.0;
    for (NodeId v = 0; v < g.num_nodes() && weight > 0.0; ++v) weight *= ((a >> v) & 1U) ? params.q[v] : 1.0 - params.q[v];
    if (weight == 0.0) continue;
    expansion.assign(1, {0, weight});
    for (LinkId l = 0; l < E; ++l) {
      if ((a & endpoints[l]) != endpoints[l]) continue;
      scratch.clear();
      for (const auto& [mask, prob] : expansion) {
        if (params.p[l] > 0.0) scratch.emplace_back(mask | (std::uint64_t{1} << l), prob * params.p[l]);
        if (params.p[l] < 1.0) scratch.emplace_back(mask, prob * (1.0 - params.p[l]));
      }
      expansion.swap(scratch);
    }
    for (const auto& [mask, prob] : expansion) out.probs[mask] += prob;
  }
  return out;
}

ConfigDistribution union_convolve(const ConfigDistribution& a, const ConfigDistribution& b) {
  if (a.num_links != b.num_links) throw ValidationError("distributions over different link sets");
  auto fa = a.probs;
  auto fb = b.probs;
  subset_sum(fa, a.num_links);
  subset_sum(fb, b.num_links);
  for (std::size_t s = 0; s < fa.size(); ++s) fa[s] *= fb[s];
  moebius(fa, a.num_links);
  for (double& v : fa) v = std::max(v, 0.0);
  return ConfigDistribution{a.num_links, std::move(fa)};
}

ConfigDistribution merge_recursion(const ConfigDistribution& q1, int M) {
  if (M < 1) throw ValidationError("M must be at least 1");
  if (q1.num_links > kMaxEnumLinks) throw SizeCapError("merge recursion supports at most 20 links");
  if (M == 1) return q1;
  // Stay in the subset-sum domain between steps: there the union of
  // independent stacks is a pointwise product.
  auto base = q1.probs;
  subset_sum(base, q1.num_links);
  auto acc = base;
  for (int k = 1; k < M; ++k) {
    for (std::size_t s = 0; s < acc.size(); ++s) acc[s] *= base[s];
  }
  moebius(acc, q1.num_links);
  for (double& v : acc) v = std::max(v, 0.0);
  return ConfigDistribution{q1.num_links, std::move(acc)};
}

ConfigDistribution brute_force_dist(const BaseGraph& g, const ModelParams& params) {
  validate_model(g, params).throw_if_invalid();
  check_enum_caps(g);
  const auto outcomes = layer_outcomes(g, params.p, params.q);
  return propagate_layers(g, params.K, std::vector(static_cast<std::size_t>(params.M), outcomes));
}

ConfigDistribution conditioned_brute_force(const BaseGraph& g, const ModelParams& params, NodeId node, int m) {
  validate_model(g, params).throw_if_invalid();
  check_enum_caps(g);
  if (node >= g.num_nodes()) throw ValidationError("no such node");
  if (m < 0 || m > params.M) throw ValidationError("layer count m must lie in [0, M]");
  if (params.q[node] >= 1.0 && m < params.M) throw ValidationError("conditioning event has probability zero");
  auto q_in = params.q;
  auto q_out = params.q;
  q_in[node] = 1.0;
  q_out[node] = 0.0;
  std::vector<std::vector<std::pair<std::uint64_t, double>>> layers;
  const auto inside = layer_outcomes(g, params.p, q_in);
  const auto outside = layer_outcomes(g, params.p, q_out);
  for (int layer = 0; layer < params.M; ++layer) layers.push_back(layer < m ? inside : outside);
  return propagate_layers(g, params.K, layers);
}

std::uint64_t count_independent_sets(const BaseGraph& g) {
  if (g.num_nodes() > kMaxEnumNodes) throw SizeCapError("independent set counting supports at most 24 nodes");
  const auto adj = g.adjacency_masks();
  const std::size_t n = g.num_nodes();
  // independent[S] built from S minus its lowest node.
  std::vector<bool> independent(std::size_t{1} << n, false);
  independent[0] = true;
  std::uint64_t count = 1;
  for (std::uint64_t s = 1; s < independent.size(); ++s) {
    const std::uint64_t low = s & (~s + 1);
    const int v = __builtin_ctzll(low);
    const bool ok = independent[s ^ low] && (adj[v] & s) == 0;
    independent[s] = ok;
    count += ok ? 1 : 0;
  }
  return count;
}

}  // namespace mlnet::general
