#include "mlnet/topologies.hpp"

#include <charconv>
#include <string>

namespace mlnet {

BaseGraph spider_graph(const std::vector<std::size_t>& branch_lengths) {
  std::vector<Link> links;
  NodeId next = 1;
  for (const std::size_t length : branch_lengths) {
    NodeId prev = 0;
    for (std::size_t i = 0; i < length; ++i) {
      links.push_back({prev, next});
      prev = next++;
    }
  }
  return BaseGraph(next, std::move(links));
}

BaseGraph star_fig7() { return spider_graph({2, 3, 4, 3}); }

BaseGraph complete_binary_tree(int levels) {
  const std::size_t n = levels <= 0 ? 0 : (std::size_t{1} << levels) - 1;
  std::vector<Link> links;
  for (NodeId v = 1; v < n; ++v) links.push_back({(v - 1) / 2, v});
  return BaseGraph(n, std::move(links));
}

BaseGraph btree5() { return complete_binary_tree(6); }

namespace {

std::optional<std::size_t> suffix_number(std::string_view name, std::string_view prefix) {
  if (!name.starts_with(prefix)) return std::nullopt;
  const auto digits = name.substr(prefix.size());
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<BaseGraph> builtin_topology(std::string_view name) {
  if (name == "star-fig7") return star_fig7();
  if (name == "btree5") return btree5();
  if (auto n = suffix_number(name, "line"); n && *n >= 1) return path_graph(*n);
  if (auto n = suffix_number(name, "clique"); n && *n >= 1) return complete_graph(*n);
  return std::nullopt;
}

}  // namespace mlnet
