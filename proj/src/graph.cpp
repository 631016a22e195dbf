#include "mlnet/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "mlnet/errors.hpp"

namespace mlnet {

BaseGraph::BaseGraph(std::size_t num_nodes, std::vector<Link> links)
    : links_(std::move(links)), adjacency_(num_nodes) {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (LinkId l = 0; l < links_.size(); ++l) {
    const auto [u, v] = links_[l];
    if (u >= num_nodes || v >= num_nodes) {
      throw ValidationError("link " + std::to_string(l) + " references a node id >= " + std::to_string(num_nodes));
    }
    if (u == v) throw ValidationError("self-loop at node " + std::to_string(u));
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw ValidationError("duplicate link (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    adjacency_[u].push_back({v, l});
    adjacency_[v].push_back({u, l});
  }
}

std::optional<LinkId> BaseGraph::find_link(NodeId u, NodeId v) const {
  if (u >= num_nodes()) return std::nullopt;
  for (const auto& inc : adjacency_[u]) {
    if (inc.neighbor == v) return inc.link;
  }
  return std::nullopt;
}

bool BaseGraph::is_connected() const {
  if (num_nodes() == 0) return true;
  std::vector<bool> seen(num_nodes(), false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (const auto& inc : adjacency_[v]) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = true;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == num_nodes();
}

std::vector<std::uint64_t> BaseGraph::adjacency_masks() const {
  std::vector<std::uint64_t> masks(num_nodes(), 0);
  for (const auto& [u, v] : links_) {
    masks[u] |= std::uint64_t{1} << v;
    masks[v] |= std::uint64_t{1} << u;
  }
  return masks;
}

namespace {

// Next non-blank, non-comment line; false at end of input.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

BaseGraph read_graph(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ValidationError("graph file: missing 'n m' header");
  std::istringstream header(line);
  long long n = -1;
  long long m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) throw ValidationError("graph file: bad header '" + line + "'");

  std::vector<Link> links;
  links.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line)) throw ValidationError("graph file: expected " + std::to_string(m) + " links");
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) throw ValidationError("graph file: bad link line '" + line + "'");
    links.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return BaseGraph(static_cast<std::size_t>(n), std::move(links));
}

void write_graph(std::ostream& out, const BaseGraph& g) {
  out << g.num_nodes() << ' ' << g.num_links() << '\n';
  for (const auto& [u, v] : g.links()) out << u << ' ' << v << '\n';
}

BaseGraph path_graph(std::size_t num_links) {
  std::vector<Link> links;
  for (NodeId i = 0; i < num_links; ++i) links.push_back({i, i + 1});
  return BaseGraph(num_links + 1, std::move(links));
}

BaseGraph complete_graph(std::size_t num_nodes) {
  std::vector<Link> links;
  for (NodeId i = 0; i < num_nodes; ++i) {
    for (NodeId j = i + 1; j < num_nodes; ++j) links.push_back({i, j});
  }
  return BaseGraph(num_nodes, std::move(links));
}

}  // namespace mlnet
