#include "mlnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_map>

#include "mlnet/errors.hpp"

namespace mlnet::mc {

namespace {

constexpr std::size_t kMaxCountedLinks = 20;
constexpr std::size_t kMaxJointLinks = 3;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { reset(); }

  void reset() {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    std::fill(size_.begin(), size_.end(), 1);
  }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::uint64_t component_size(std::size_t v) { return size_[find(v)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint64_t> size_;
};

// Per-layer parameter views; identical layers share one vector.
struct LayerView {
  int K;
  std::vector<const std::vector<double>*> p;
  std::vector<const std::vector<double>*> q;
  int M() const { return static_cast<int>(p.size()); }
};

struct Tally {
  std::vector<std::uint64_t> link_active;
  std::unordered_map<std::uint64_t, std::uint64_t> configs;
  std::vector<std::uint64_t> cluster_sum;
  std::vector<std::uint64_t> cluster_sum_sq;
  std::uint64_t links_sum = 0;
  std::uint64_t links_sum_sq = 0;
  std::vector<std::uint64_t> joint;
  std::vector<std::uint64_t> target_hits;

  void merge(const Tally& other) {
    for (std::size_t i = 0; i < link_active.size(); ++i) link_active[i] += other.link_active[i];
    for (const auto& [mask, count] : other.configs) configs[mask] += count;
    for (std::size_t i = 0; i < cluster_sum.size(); ++i) {
      cluster_sum[i] += other.cluster_sum[i];
      cluster_sum_sq[i] += other.cluster_sum_sq[i];
    }
    links_sum += other.links_sum;
    links_sum_sq += other.links_sum_sq;
    for (std::size_t i = 0; i < joint.size(); ++i) joint[i] += other.joint[i];
    for (std::size_t i = 0; i < target_hits.size(); ++i) target_hits[i] += other.target_hits[i];
  }
};

void run_range(const BaseGraph& g, const LayerView& view, const SimConfig& cfg, std::uint64_t begin, std::uint64_t end,
               Tally& tally) {
  const std::size_t V = g.num_nodes();
  const std::size_t E = g.num_links();
  std::vector<char> active(V);
  std::vector<int> W(E);
  UnionFind uf(V);
  const std::size_t base = static_cast<std::size_t>(view.M()) + 1;

  for (std::uint64_t r = begin; r < end; ++r) {
    auto rng = SplitMix64::stream(cfg.seed, r);
    std::fill(W.begin(), W.end(), 0);
    for (int m = 0; m < view.M(); ++m) {
      const auto& p = *view.p[m];
      const auto& q = *view.q[m];
      for (NodeId v = 0; v < V; ++v) active[v] = rng.bernoulli(q[v]);
      for (LinkId l = 0; l < E; ++l) {
        const auto& [u, v] = g.link(l);
        if (active[u] && active[v] && rng.bernoulli(p[l])) ++W[l];
      }
    }
    std::uint64_t mask = 0;
    std::uint64_t count = 0;
    const bool need_uf = !cfg.cluster_nodes.empty();
    if (need_uf) uf.reset();
    for (LinkId l = 0; l < E; ++l) {
      if (W[l] < view.K) continue;
      ++tally.link_active[l];
      ++count;
      if (l < 64) mask |= std::uint64_t{1} << l;
      if (need_uf) uf.unite(g.link(l).u, g.link(l).v);
    }
    if (cfg.config_counts) ++tally.configs[mask];
    for (std::size_t t = 0; t < cfg.target_configs.size(); ++t) {
      const auto& x = cfg.target_configs[t];
      bool hit = true;
      for (LinkId l = 0; l < E && hit; ++l) hit = x[l] == (W[l] >= view.K);
      if (hit) ++tally.target_hits[t];
    }
    for (std::size_t i = 0; i < cfg.cluster_nodes.size(); ++i) {
      const std::uint64_t s = uf.component_size(cfg.cluster_nodes[i]);
      tally.cluster_sum[i] += s;
      tally.cluster_sum_sq[i] += s * s;
    }
    tally.links_sum += count;
    tally.links_sum_sq += count * count;
    if (!cfg.multiplicity_links.empty()) {
      std::size_t idx = 0;
      std::size_t place = 1;
      for (LinkId l : cfg.multiplicity_links) {
        idx += static_cast<std::size_t>(W[l]) * place;
        place *= base;
      }
      ++tally.joint[idx];
    }
  }
}

EstimateReport run(const BaseGraph& g, const LayerView& view, const SimConfig& cfg) {
  cfg.validate(g);
  if (view.M() < 1) throw ValidationError("at least one layer is required");
  const std::size_t E = g.num_links();
  std::size_t joint_size = 0;
  if (!cfg.multiplicity_links.empty()) {
    joint_size = 1;
    for (std::size_t i = 0; i < cfg.multiplicity_links.size(); ++i) joint_size *= static_cast<std::size_t>(view.M()) + 1;
  }
  const auto fresh = [&] {
    Tally t;
    t.link_active.assign(E, 0);
    t.cluster_sum.assign(cfg.cluster_nodes.size(), 0);
    t.cluster_sum_sq.assign(cfg.cluster_nodes.size(), 0);
    t.joint.assign(joint_size, 0);
    t.target_hits.assign(cfg.target_configs.size(), 0);
    return t;
  };

  const std::uint64_t n = cfg.replications;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(cfg.threads), n));
  std::vector<Tally> tallies(workers, fresh());
  if (workers <= 1) {
    run_range(g, view, cfg, 0, n, tallies[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = n * w / workers;
      const std::uint64_t end = n * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { run_range(g, view, cfg, begin, end, tallies[w]); });
    }
    for (auto& t : pool) t.join();
  }
  Tally total = fresh();
  for (const auto& t : tallies) total.merge(t);

  EstimateReport report;
  report.replications = n;
  report.num_links = E;
  for (LinkId l = 0; l < E; ++l) report.link_active.push_back(estimate_from_sums(n, total.link_active[l], total.link_active[l]));
  report.config_counts.insert(total.configs.begin(), total.configs.end());
  for (std::size_t i = 0; i < cfg.cluster_nodes.size(); ++i) {
    report.cluster_size[cfg.cluster_nodes[i]] = estimate_from_sums(n, total.cluster_sum[i], total.cluster_sum_sq[i]);
  }
  for (std::uint64_t hits : total.target_hits) report.target_config_prob.push_back(estimate_from_sums(n, hits, hits));
  if (cfg.active_link_count) report.active_links = estimate_from_sums(n, total.links_sum, total.links_sum_sq);
  if (!cfg.multiplicity_links.empty()) {
    report.multiplicity = MultiplicityTable{cfg.multiplicity_links, view.M(), std::move(total.joint)};
  }
  return report;
}

}  // namespace

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix(mix(seed) ^ (index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL)));
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

void SimConfig::validate(const BaseGraph& g) const {
  if (replications < 1) throw ValidationError("replications must be at least 1");
  if (config_counts && g.num_links() > kMaxCountedLinks) {
    throw ValidationError("configuration counting supports at most 20 links");
  }
  for (NodeId v : cluster_nodes) {
    if (v >= g.num_nodes()) throw ValidationError("cluster node " + std::to_string(v) + " does not exist");
  }
  if (multiplicity_links.size() > kMaxJointLinks) throw ValidationError("multiplicity joint supports at most 3 links");
  for (LinkId l : multiplicity_links) {
    if (l >= g.num_links()) throw ValidationError("link " + std::to_string(l) + " does not exist");
  }
  for (const auto& x : target_configs) {
    if (x.size() != g.num_links()) throw ValidationError("target configuration length does not match link count");
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MLNET_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

Estimate estimate_from_sums(std::uint64_t n, std::uint64_t sum, std::uint64_t sum_sq) {
  Estimate e;
  e.n = n;
  if (n == 0) return e;
  const double dn = static_cast<double>(n);
  e.mean = static_cast<double>(sum) / dn;
  if (n > 1) {
    const double var = (static_cast<double>(sum_sq) - dn * e.mean * e.mean) / (dn - 1.0);
    e.std_error = std::sqrt(std::max(0.0, var) / dn);
  }
  return e;
}

std::size_t MultiplicityTable::index(std::span<const int> w) const {
  std::size_t idx = 0;
  std::size_t place = 1;
  for (int wk : w) {
    idx += static_cast<std::size_t>(wk) * place;
    place *= static_cast<std::size_t>(M) + 1;
  }
  return idx;
}

std::vector<double> MultiplicityTable::pmf() const {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  std::vector<double> out(counts.size(), 0.0);
  if (n == 0) return out;
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return out;
}

Estimate EstimateReport::config_prob(std::uint64_t mask) const {
  const auto it = config_counts.find(mask);
  const std::uint64_t c = it == config_counts.end() ? 0 : it->second;
  return estimate_from_sums(replications, c, c);
}

EstimateReport simulate(const BaseGraph& g, const ModelParams& params, const SimConfig& cfg) {
  validate_model(g, params).throw_if_invalid();
  LayerView view{params.K, std::vector(params.M, &params.p), std::vector(params.M, &params.q)};
  return run(g, view, cfg);
}

EstimateReport simulate(const BaseGraph& g, const NonIdenticalParams& params, const SimConfig& cfg) {
  validate_model(g, params).throw_if_invalid();
  LayerView view{params.K, {}, {}};
  for (const auto& p : params.p) view.p.push_back(&p);
  for (const auto& q : params.q) view.q.push_back(&q);
  return run(g, view, cfg);
}

MultiplicityTable empirical_multiplicity_joint(const BaseGraph& g, const ModelParams& params, SimConfig cfg,
                                               const std::vector<LinkId>& links) {
  if (links.empty()) throw ValidationError("at least one link is required");
  cfg.multiplicity_links = links;
  cfg.config_counts = false;
  cfg.cluster_nodes.clear();
  return *simulate(g, params, cfg).multiplicity;
}

}  // namespace mlnet::mc
