#include "mlnet/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "mlnet/errors.hpp"

namespace mlnet::feasibility {

namespace {

using Mask = std::uint64_t;

void bron_kerbosch(const std::vector<Mask>& adj, Mask r, Mask p, Mask x, std::vector<Mask>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  const Mask px = p | x;
  int pivot = std::countr_zero(px);
  int best = -1;
  for (Mask s = px; s; s &= s - 1) {
    const int u = std::countr_zero(s);
    const int c = std::popcount(p & adj[u]);
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  for (Mask s = p & ~adj[pivot]; s; s &= s - 1) {
    const int v = std::countr_zero(s);
    const Mask bit = Mask{1} << v;
    bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
    p &= ~bit;
    x |= bit;
  }
}

struct CoverSearch {
  std::vector<Mask> clique_links;                // link mask per maximal clique
  std::vector<std::vector<std::size_t>> by_link;  // cliques containing each link
  std::vector<std::size_t> chosen;

  bool search(Mask uncovered, std::size_t budget) {
    if (uncovered == 0) return true;
    if (budget == 0) return false;
    const int l = std::countr_zero(uncovered);
    for (std::size_t c : by_link[l]) {
      chosen.push_back(c);
      if (search(uncovered & ~clique_links[c], budget - 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

BaseGraph induced_subgraph(const BaseGraph& g, const LinkConfiguration& x) {
  if (x.size() != g.num_links()) throw ValidationError("configuration length does not match link count");
  std::vector<Link> active;
  for (LinkId l = 0; l < g.num_links(); ++l) {
    if (x[l]) active.push_back(g.link(l));
  }
  return BaseGraph(g.num_nodes(), std::move(active));
}

CliqueCover min_clique_edge_cover(const BaseGraph& g) {
  if (g.num_links() > kMaxCoverLinks) {
    throw SizeCapError("clique cover search supports at most " + std::to_string(kMaxCoverLinks) + " links, got " +
                       std::to_string(g.num_links()));
  }
  if (g.num_nodes() > 64) throw SizeCapError("clique cover search supports at most 64 nodes");
  CliqueCover cover;
  cover.covered_links.assign(g.num_links(), true);
  if (g.num_links() == 0) return cover;

  const auto adj = g.adjacency_masks();
  Mask candidates = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (adj[v]) candidates |= Mask{1} << v;
  }
  std::vector<Mask> cliques;
  bron_kerbosch(adj, 0, candidates, 0, cliques);

  CoverSearch cs;
  cs.by_link.resize(g.num_links());
  for (Mask nodes : cliques) {
    Mask links = 0;
    for (LinkId l = 0; l < g.num_links(); ++l) {
      const auto& [u, v] = g.link(l);
      if (((nodes >> u) & 1U) && ((nodes >> v) & 1U)) links |= Mask{1} << l;
    }
    cs.clique_links.push_back(links);
  }
  // Larger cliques first so the deepening search meets good covers early.
  std::vector<std::size_t> order(cliques.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(cs.clique_links[a]) > std::popcount(cs.clique_links[b]);
  });
  for (std::size_t c : order) {
    for (Mask s = cs.clique_links[c]; s; s &= s - 1) cs.by_link[std::countr_zero(s)].push_back(c);
  }

  const Mask all = g.num_links() == 64 ? ~Mask{0} : (Mask{1} << g.num_links()) - 1;
  for (std::size_t budget = 1;; ++budget) {
    cs.chosen.clear();
    if (cs.search(all, budget)) break;
  }
  for (std::size_t c : cs.chosen) {
    std::vector<NodeId> members;
    for (Mask s = cliques[c]; s; s &= s - 1) members.push_back(static_cast<NodeId>(std::countr_zero(s)));
    cover.cliques.push_back(std::move(members));
  }
  return cover;
}

FeasibilityResult mcc_check(const LinkConfiguration& x, int M, const BaseGraph& g) {
  if (!g.is_clique()) throw ValidationError("feasibility test requires a complete base graph");
  if (M < 1) throw ValidationError("M must be at least 1");
  const BaseGraph active = induced_subgraph(g, x);
  FeasibilityResult result;
  if (active.num_links() <= static_cast<std::size_t>(M)) {
    // One two-node clique per active link already fits.
    result.feasible = true;
    result.min_cover_size = active.num_links();
    result.witness.covered_links.assign(active.num_links(), true);
    if (active.num_links() > kMaxCoverLinks) {
      for (const auto& [u, v] : active.links()) result.witness.cliques.push_back({std::min(u, v), std::max(u, v)});
      return result;
    }
  }
  result.witness = min_clique_edge_cover(active);
  result.min_cover_size = result.witness.size();
  result.feasible = result.min_cover_size <= static_cast<std::size_t>(M);
  return result;
}

bool mcc_feasible(const LinkConfiguration& x, int M, const BaseGraph& g) { return mcc_check(x, M, g).feasible; }

}  // namespace mlnet::feasibility
