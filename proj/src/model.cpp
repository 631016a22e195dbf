#include "mlnet/model.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "mlnet/errors.hpp"

namespace mlnet {

ModelParams ModelParams::uniform(const BaseGraph& g, int M, int K, double p, double q) {
  return ModelParams{M, K, std::vector<double>(g.num_links(), p), std::vector<double>(g.num_nodes(), q)};
}

NonIdenticalParams NonIdenticalParams::replicate(const ModelParams& params) {
  NonIdenticalParams out;
  out.K = params.K;
  out.p.assign(static_cast<std::size_t>(params.M), params.p);
  out.q.assign(static_cast<std::size_t>(params.M), params.q);
  return out;
}

LinkConfiguration LinkConfiguration::all_ones(std::size_t num_links) {
  LinkConfiguration x(num_links);
  for (LinkId l = 0; l < num_links; ++l) x.set(l, true);
  return x;
}

LinkConfiguration LinkConfiguration::from_mask(std::uint64_t mask, std::size_t num_links) {
  LinkConfiguration x(num_links);
  for (LinkId l = 0; l < num_links && l < 64; ++l) x.set(l, (mask >> l) & 1U);
  return x;
}

LinkConfiguration LinkConfiguration::parse(std::string_view bits) {
  LinkConfiguration x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw ValidationError("configuration must be a string of 0/1, got '" + std::string(bits) + "'");
    }
    x.set(i, bits[i] == '1');
  }
  return x;
}

std::size_t LinkConfiguration::num_active() const {
  std::size_t count = 0;
  for (bool b : bits_) count += b ? 1 : 0;
  return count;
}

std::uint64_t LinkConfiguration::to_mask() const {
  if (bits_.size() > 64) throw SizeCapError("configuration with more than 64 links has no bitmask form");
  std::uint64_t mask = 0;
  for (std::size_t l = 0; l < bits_.size(); ++l) {
    if (bits_[l]) mask |= std::uint64_t{1} << l;
  }
  return mask;
}

std::string LinkConfiguration::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t l = 0; l < bits_.size(); ++l) s[l] = bits_[l] ? '1' : '0';
  return s;
}

LayerSample::LayerSample(const BaseGraph& g, std::vector<bool> active_nodes, std::vector<bool> surviving_links)
    : active_nodes_(std::move(active_nodes)), surviving_links_(std::move(surviving_links)) {
  if (active_nodes_.size() != g.num_nodes() || surviving_links_.size() != g.num_links()) {
    throw ValidationError("layer sample dimensions do not match the base graph");
  }
  layer_links_.resize(g.num_links());
  for (LinkId l = 0; l < g.num_links(); ++l) {
    const auto& [u, v] = g.link(l);
    layer_links_[l] = surviving_links_[l] && active_nodes_[u] && active_nodes_[v];
  }
}

void ValidationReport::throw_if_invalid() const {
  if (!errors.empty()) throw ValidationError(errors.front());
}

namespace {

bool is_probability(double x) { return std::isfinite(x) && x > 0.0 && x <= 1.0; }

void check_vector(ValidationReport& report, const std::vector<double>& values, std::size_t expected,
                  const std::string& what) {
  if (values.size() != expected) {
    report.errors.push_back(what + " has " + std::to_string(values.size()) + " entries, expected " +
                            std::to_string(expected));
    return;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!is_probability(values[i])) {
      std::ostringstream msg;
      msg << what << "[" << i << "] = " << values[i] << " is not in (0, 1]";
      report.errors.push_back(msg.str());
    }
  }
}

void check_thresholds(ValidationReport& report, int M, int K) {
  if (M < 1) report.errors.push_back("M must be at least 1");
  if (K < 1) report.errors.push_back("K must be at least 1");
  if (K > M) report.errors.push_back("K exceeds M");
}

}  // namespace

ValidationReport validate_model(const BaseGraph& g, const ModelParams& params) {
  ValidationReport report;
  check_thresholds(report, params.M, params.K);
  check_vector(report, params.p, g.num_links(), "p");
  check_vector(report, params.q, g.num_nodes(), "q");
  if (!g.is_connected()) report.warnings.push_back("base graph is not connected");
  return report;
}

ValidationReport validate_model(const BaseGraph& g, const NonIdenticalParams& params) {
  ValidationReport report;
  check_thresholds(report, params.num_layers(), params.K);
  if (params.q.size() != params.p.size()) report.errors.push_back("per-layer p and q disagree on the layer count");
  for (std::size_t m = 0; m < params.p.size(); ++m) {
    check_vector(report, params.p[m], g.num_links(), "p[" + std::to_string(m) + "]");
  }
  for (std::size_t m = 0; m < params.q.size(); ++m) {
    check_vector(report, params.q[m], g.num_nodes(), "q[" + std::to_string(m) + "]");
  }
  if (!g.is_connected()) report.warnings.push_back("base graph is not connected");
  return report;
}

MultiplicityVector multiplicities(std::span<const LayerSample> layers) {
  MultiplicityVector w;
  if (layers.empty()) return w;
  const std::size_t num_links = layers.front().layer_links().size();
  w.counts.assign(num_links, 0);
  for (const auto& layer : layers) {
    if (layer.layer_links().size() != num_links) throw ValidationError("layers have mismatched link counts");
    for (std::size_t l = 0; l < num_links; ++l) w.counts[l] += layer.layer_links()[l] ? 1 : 0;
  }
  return w;
}

LinkConfiguration merge_layers(std::span<const LayerSample> layers, int K) {
  if (K < 1 || static_cast<std::size_t>(K) > layers.size()) {
    throw ValidationError("merge_layers requires 1 <= K <= number of layers");
  }
  const auto w = multiplicities(layers);
  LinkConfiguration x(w.counts.size());
  for (std::size_t l = 0; l < w.counts.size(); ++l) x.set(l, w.counts[l] >= K);
  return x;
}

namespace {

struct Directive {
  std::string key;
  std::vector<double> args;
  std::string text;
};

std::vector<Directive> read_directives(std::istream& in) {
  std::vector<Directive> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    Directive d;
    if (!(row >> d.key)) continue;
    d.text = line;
    std::string token;
    while (row >> token) {
      try {
        std::size_t used = 0;
        d.args.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ValidationError("parameter file: bad number '" + token + "' in '" + line + "'");
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

int as_int(const Directive& d, double v) {
  if (v != std::floor(v)) throw ValidationError("parameter file: expected an integer in '" + d.text + "'");
  return static_cast<int>(v);
}

NodeId as_node(const Directive& d, double v, const BaseGraph& g) {
  const int id = as_int(d, v);
  if (id < 0 || static_cast<std::size_t>(id) >= g.num_nodes()) {
    throw ValidationError("parameter file: unknown node in '" + d.text + "'");
  }
  return static_cast<NodeId>(id);
}

LinkId as_link(const Directive& d, double u, double v, const BaseGraph& g) {
  const auto link = g.find_link(as_node(d, u, g), as_node(d, v, g));
  if (!link) throw ValidationError("parameter file: no such link in '" + d.text + "'");
  return *link;
}

[[noreturn]] void bad_directive(const Directive& d) {
  throw ValidationError("parameter file: cannot parse '" + d.text + "'");
}

}  // namespace

ModelParams read_params(std::istream& in, const BaseGraph& g) {
  const auto directives = read_directives(in);
  ModelParams params = ModelParams::uniform(g, 1, 1, 1.0, 1.0);
  // Uniform values first, then per-element overrides.
  for (const auto& d : directives) {
    if (d.key == "M" && d.args.size() == 1) {
      params.M = as_int(d, d.args[0]);
    } else if (d.key == "K" && d.args.size() == 1) {
      params.K = as_int(d, d.args[0]);
    } else if (d.key == "p" && d.args.size() == 1) {
      params.p.assign(g.num_links(), d.args[0]);
    } else if (d.key == "q" && d.args.size() == 1) {
      params.q.assign(g.num_nodes(), d.args[0]);
    } else if (!((d.key == "p" && d.args.size() == 3) || (d.key == "q" && d.args.size() == 2))) {
      bad_directive(d);
    }
  }
  for (const auto& d : directives) {
    if (d.key == "p" && d.args.size() == 3) params.p[as_link(d, d.args[0], d.args[1], g)] = d.args[2];
    if (d.key == "q" && d.args.size() == 2) params.q[as_node(d, d.args[0], g)] = d.args[1];
  }
  return params;
}

NonIdenticalParams read_layer_params(std::istream& in, const BaseGraph& g) {
  const auto directives = read_directives(in);
  int M = 1;
  int K = 1;
  double p = 1.0;
  double q = 1.0;
  for (const auto& d : directives) {
    if (d.args.size() != 1) continue;
    if (d.key == "M") M = as_int(d, d.args[0]);
    else if (d.key == "K") K = as_int(d, d.args[0]);
    else if (d.key == "p") p = d.args[0];
    else if (d.key == "q") q = d.args[0];
  }
  if (M < 1) throw ValidationError("parameter file: M must be at least 1");
  NonIdenticalParams params;
  params.K = K;
  params.p.assign(static_cast<std::size_t>(M), std::vector<double>(g.num_links(), p));
  params.q.assign(static_cast<std::size_t>(M), std::vector<double>(g.num_nodes(), q));

  auto layer_of = [&](const Directive& d) {
    const int m = as_int(d, d.args[0]);
    if (m < 0 || m >= M) throw ValidationError("parameter file: layer out of range in '" + d.text + "'");
    return static_cast<std::size_t>(m);
  };
  // Whole-layer values before per-element ones.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& d : directives) {
      const bool whole = d.args.size() == 2;
      if (d.key == "layer_p") {
        if (whole && pass == 0) params.p[layer_of(d)].assign(g.num_links(), d.args[1]);
        else if (d.args.size() == 4 && pass == 1) params.p[layer_of(d)][as_link(d, d.args[1], d.args[2], g)] = d.args[3];
        else if (!whole && d.args.size() != 4) bad_directive(d);
      } else if (d.key == "layer_q") {
        if (whole && pass == 0) params.q[layer_of(d)].assign(g.num_nodes(), d.args[1]);
        else if (d.args.size() == 3 && pass == 1) params.q[layer_of(d)][as_node(d, d.args[1], g)] = d.args[2];
        else if (!whole && d.args.size() != 3) bad_directive(d);
      } else if (!((d.key == "M" || d.key == "K" || d.key == "p" || d.key == "q") && d.args.size() == 1)) {
        bad_directive(d);
      }
    }
  }
  return params;
}

}  // namespace mlnet
