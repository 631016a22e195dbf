#pragma once

#include <cstdint>
#include <vector>

#include "mlnet/model.hpp"

// Exhaustive methods for small arbitrary graphs. Configurations are bitmasks
// with bit l = link l.
namespace mlnet::general {

// Size caps; exceeding them throws SizeCapError.
inline constexpr std::size_t kMaxEnumLinks = 20;
inline constexpr std::size_t kMaxEnumNodes = 24;
// Random (non-degenerate) node and link variables per layer in brute force.
inline constexpr std::size_t kMaxBruteForceBits = 26;
// Capped-multiplicity states (K+1)^|E| tracked by brute force.
inline constexpr std::size_t kMaxBruteForceStates = std::size_t{1} << 22;

struct ConfigDistribution {
  std::size_t num_links = 0;
  std::vector<double> probs;  // 2^num_links entries

  double operator[](std::uint64_t mask) const { return probs[mask]; }
  double total() const;
};

// Q_1: configuration law of a single layer (M and K are ignored).
ConfigDistribution single_layer_dist(const BaseGraph& g, const ModelParams& params);

// Union of two independent layer stacks: P[y | z = x] summed over y, z.
// Computed through subset-sum (zeta) and Moebius transforms.
ConfigDistribution union_convolve(const ConfigDistribution& a, const ConfigDistribution& b);

// Q_M for K = 1, applying Q_{k+1} = Q_k (union) Q_1 for k = 1..M-1.
ConfigDistribution merge_recursion(const ConfigDistribution& q1, int M);

// Exact law of the merged configuration for any K by enumerating every
// single-layer outcome (node activations x link survivals) and propagating
// per-link multiplicities, capped at K, through the M layers.
ConfigDistribution brute_force_dist(const BaseGraph& g, const ModelParams& params);

// As brute_force_dist, conditioned on `node` being active in exactly m
// layers (equivalently, in the fixed layer set {0..m-1}).
// Throws ValidationError when that event has probability zero.
ConfigDistribution conditioned_brute_force(const BaseGraph& g, const ModelParams& params, NodeId node, int m);

// Number of independent node sets, the empty set included. |V| <= 24.
std::uint64_t count_independent_sets(const BaseGraph& g);

}  // namespace mlnet::general
