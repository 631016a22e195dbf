#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mlnet/graph.hpp"

namespace mlnet {

// Center node 0 with hanging paths of the given node counts.
BaseGraph spider_graph(const std::vector<std::size_t>& branch_lengths);

// Star used in the tree experiments: a center with hanging
// paths of 2, 3, 4 and 3 nodes (13 nodes, 12 links).
BaseGraph star_fig7();

// Complete binary tree with `levels` levels of nodes (2^levels - 1 nodes),
// nodes numbered breadth-first from the root 0.
BaseGraph complete_binary_tree(int levels);

// Height-5 complete binary tree: 6 levels, 63 nodes, 62 links.
BaseGraph btree5();

// Lookup by name: "star-fig7", "btree5", "line<n>", "clique<n>".
std::optional<BaseGraph> builtin_topology(std::string_view name);

}  // namespace mlnet
