#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace mlnet {

using NodeId = std::size_t;
using LinkId = std::size_t;

struct Link {
  NodeId u;
  NodeId v;

  NodeId other(NodeId w) const { return w == u ? v : u; }
  bool touches(NodeId w) const { return w == u || w == v; }
  friend bool operator==(const Link&, const Link&) = default;
};

struct Incidence {
  NodeId neighbor;
  LinkId link;
};

/**
 * Undirected simple graph with dense node ids 0..n-1.
 *
 * Link order is the order of construction and is the bit position of a
 * link in every configuration over this graph.
 */
class BaseGraph {
 public:
  BaseGraph() = default;

  // Throws ValidationError on self-loops, duplicate links or node ids >= n.
  BaseGraph(std::size_t num_nodes, std::vector<Link> links);

  std::size_t num_nodes() const { return adjacency_.size(); }
  std::size_t num_links() const { return links_.size(); }

  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId l) const { return links_[l]; }
  const std::vector<Incidence>& incident(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

  std::optional<LinkId> find_link(NodeId u, NodeId v) const;

  bool is_connected() const;
  bool is_tree() const { return num_nodes() > 0 && num_links() + 1 == num_nodes() && is_connected(); }
  bool is_clique() const { return num_links() * 2 == num_nodes() * (num_nodes() - 1); }

  // Neighbor bitmask per node; requires num_nodes() <= 64.
  std::vector<std::uint64_t> adjacency_masks() const;

  friend bool operator==(const BaseGraph& a, const BaseGraph& b) {
    return a.num_nodes() == b.num_nodes() && a.links_ == b.links_;
  }

 private:
  std::vector<Link> links_;
  std::vector<std::vector<Incidence>> adjacency_;
};

// Text format: first line "n m", then m lines "u v" (0-based). Lines starting
// with '#' and blank lines are skipped.
BaseGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const BaseGraph& g);

BaseGraph path_graph(std::size_t num_links);
BaseGraph complete_graph(std::size_t num_nodes);

}  // namespace mlnet
