#pragma once

#include <vector>

#include "mlnet/graph.hpp"
#include "mlnet/model.hpp"

namespace mlnet::feasibility {

inline constexpr std::size_t kMaxCoverLinks = 20;

struct CliqueCover {
  std::vector<std::vector<NodeId>> cliques;  // each sorted ascending
  std::vector<bool> covered_links;           // indexed by link of the covered graph

  std::size_t size() const { return cliques.size(); }
};

// G(x): same node set, only the active links (kept in original order).
BaseGraph induced_subgraph(const BaseGraph& g, const LinkConfiguration& x);

// Minimum number of cliques whose links cover every link of g. Exact search;
// |E| <= 20.
CliqueCover min_clique_edge_cover(const BaseGraph& g);

struct FeasibilityResult {
  bool feasible = false;
  std::size_t min_cover_size = 0;
  CliqueCover witness;  // cover of G(x)
};

// Whether configuration x can arise on the clique base g with M layers and
// K = 1, p = 1. Throws ValidationError when g is not a clique.
FeasibilityResult mcc_check(const LinkConfiguration& x, int M, const BaseGraph& g);
bool mcc_feasible(const LinkConfiguration& x, int M, const BaseGraph& g);

}  // namespace mlnet::feasibility
