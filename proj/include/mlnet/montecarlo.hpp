#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mlnet/model.hpp"

namespace mlnet::mc {

// Counter-based generator: replication r of a run uses the stream seeded by
// (seed, r), so results do not depend on how replications are scheduled.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return p >= 1.0 || uniform() < p; }

 private:
  std::uint64_t state_;
};

struct SimConfig {
  std::uint64_t replications = 100000;
  std::uint64_t seed = 1;
  bool config_counts = false;           // requires |E| <= 20
  std::vector<NodeId> cluster_nodes;    // cluster size at each of these nodes
  bool active_link_count = false;
  std::vector<LinkId> multiplicity_links;  // joint law of W over these links, at most 3
  std::vector<LinkConfiguration> target_configs;  // hit counts for these, any |E|
  unsigned threads = 0;                 // 0: MLNET_THREADS, else hardware concurrency

  // Throws ValidationError on an invalid request.
  void validate(const BaseGraph& g) const;
};

// Worker count used for `requested` (0 means default).
unsigned resolve_threads(unsigned requested);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n = 0;

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

// Estimate from integer sums of a non-negative integer statistic.
Estimate estimate_from_sums(std::uint64_t n, std::uint64_t sum, std::uint64_t sum_sq);

struct MultiplicityTable {
  std::vector<LinkId> links;
  int M = 0;
  // Index sum_k w_k (M+1)^k over the listed links.
  std::vector<std::uint64_t> counts;

  std::size_t index(std::span<const int> w) const;
  std::vector<double> pmf() const;

  friend bool operator==(const MultiplicityTable&, const MultiplicityTable&) = default;
};

struct EstimateReport {
  std::uint64_t replications = 0;
  std::size_t num_links = 0;
  std::vector<Estimate> link_active;  // P[X_l = 1] per link
  std::map<std::uint64_t, std::uint64_t> config_counts;
  std::map<NodeId, Estimate> cluster_size;
  std::optional<Estimate> active_links;
  std::optional<MultiplicityTable> multiplicity;
  std::vector<Estimate> target_config_prob;  // parallel to SimConfig::target_configs

  // Empirical probability of configuration mask, with its standard error.
  Estimate config_prob(std::uint64_t mask) const;
  friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

EstimateReport simulate(const BaseGraph& g, const ModelParams& params, const SimConfig& cfg);
EstimateReport simulate(const BaseGraph& g, const NonIdenticalParams& params, const SimConfig& cfg);

// Empirical joint pmf of (W_l) over `links` (at most 3), indexed as in
// MultiplicityTable.
MultiplicityTable empirical_multiplicity_joint(const BaseGraph& g, const ModelParams& params, SimConfig cfg,
                                               const std::vector<LinkId>& links);

}  // namespace mlnet::mc
