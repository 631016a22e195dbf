#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlnet/graph.hpp"

namespace mlnet {

/**
 * Parameters of the i.i.d.-layer model: M layers, robustness threshold K,
 * per-link survival probability p and per-node activation probability q.
 * p is indexed by LinkId, q by NodeId.
 */
struct ModelParams {
  int M = 1;
  int K = 1;
  std::vector<double> p;
  std::vector<double> q;

  static ModelParams uniform(const BaseGraph& g, int M, int K, double p, double q);
};

// Per-layer parameters for independent but non-identical layers.
// p[m][link], q[m][node] for m = 0..M-1.
struct NonIdenticalParams {
  int K = 1;
  std::vector<std::vector<double>> p;
  std::vector<std::vector<double>> q;

  int num_layers() const { return static_cast<int>(p.size()); }
  static NonIdenticalParams replicate(const ModelParams& params);
};

/// 0/1 state of every link, bit position = LinkId.
class LinkConfiguration {
 public:
  LinkConfiguration() = default;
  explicit LinkConfiguration(std::size_t num_links) : bits_(num_links, false) {}

  static LinkConfiguration all_ones(std::size_t num_links);
  static LinkConfiguration from_mask(std::uint64_t mask, std::size_t num_links);
  // "0110": character i is link i. Throws ValidationError on other characters.
  static LinkConfiguration parse(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](LinkId l) const { return bits_[l]; }
  void set(LinkId l, bool value) { bits_[l] = value; }
  std::size_t num_active() const;

  // Requires size() <= 64.
  std::uint64_t to_mask() const;
  std::string to_string() const;

  friend bool operator==(const LinkConfiguration&, const LinkConfiguration&) = default;

 private:
  std::vector<bool> bits_;
};

// One realization of a layer: node activations Z, link survivals Y and the
// resulting layer links W = Y_l Z_i Z_j.
class LayerSample {
 public:
  LayerSample(const BaseGraph& g, std::vector<bool> active_nodes, std::vector<bool> surviving_links);

  const std::vector<bool>& active_nodes() const { return active_nodes_; }
  const std::vector<bool>& surviving_links() const { return surviving_links_; }
  const std::vector<bool>& layer_links() const { return layer_links_; }

 private:
  std::vector<bool> active_nodes_;
  std::vector<bool> surviving_links_;
  std::vector<bool> layer_links_;
};

// W_l = number of layers containing link l.
struct MultiplicityVector {
  std::vector<int> counts;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
  // Throws ValidationError carrying the first error.
  void throw_if_invalid() const;
};

ValidationReport validate_model(const BaseGraph& g, const ModelParams& params);
ValidationReport validate_model(const BaseGraph& g, const NonIdenticalParams& params);

MultiplicityVector multiplicities(std::span<const LayerSample> layers);

// X_l = 1{W_l >= K}. Requires 1 <= K <= layers.size().
LinkConfiguration merge_layers(std::span<const LayerSample> layers, int K);

/*
 * Parameter file, one directive per line ('#' starts a comment):
 *   M <int>          K <int>
 *   p <value>        q <value>           uniform defaults (1 if absent)
 *   p <u> <v> <value>                    override for link (u,v)
 *   q <u> <value>                        override for node u
 * Overrides win over uniform values regardless of line order.
 */
ModelParams read_params(std::istream& in, const BaseGraph& g);

/*
 * Per-layer parameter file for non-identical layers (layers are 0-based):
 *   M <int>  K <int>  p <value>  q <value>        defaults for every layer
 *   layer_p <m> <value>           layer_p <m> <u> <v> <value>
 *   layer_q <m> <value>           layer_q <m> <u> <value>
 */
NonIdenticalParams read_layer_params(std::istream& in, const BaseGraph& g);

}  // namespace mlnet
