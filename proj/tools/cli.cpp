#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "mlnet/asymptotic.hpp"
#include "mlnet/errors.hpp"
#include "mlnet/exact_line.hpp"
#include "mlnet/exact_tree.hpp"
#include "mlnet/feasibility.hpp"
#include "mlnet/montecarlo.hpp"
#include "mlnet/topologies.hpp"

namespace mlnet::cli {

namespace {

template <class T>
T parse_number(const std::string& text) {
  std::size_t used = 0;
  T value{};
  try {
    if constexpr (std::is_same_v<T, int>) value = std::stoi(text, &used);
    else value = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw ValidationError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ValidationError("not a number: '" + text + "'");
  return value;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  if (text.empty()) throw ValidationError("empty range");
  std::vector<T> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto colon = text.find(':', dots);
    const T start = parse_number<T>(text.substr(0, dots));
    const T stop = parse_number<T>(text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
    const T step = colon == std::string::npos ? T{1} : parse_number<T>(text.substr(colon + 1));
    if (!(step > 0)) throw ValidationError("range step must be positive in '" + text + "'");
    if (stop < start) throw ValidationError("range is empty: '" + text + "'");
    const double count = std::floor((static_cast<double>(stop) - static_cast<double>(start)) / static_cast<double>(step) + 1e-9);
    if (count > 1e6) throw ValidationError("range too long: '" + text + "'");
    for (int i = 0; i <= static_cast<int>(count); ++i) out.push_back(static_cast<T>(start + static_cast<T>(i) * step));
    return out;
  }
  std::stringstream items(text);
  for (std::string item; std::getline(items, item, ',');) out.push_back(parse_number<T>(item));
  if (out.empty()) throw ValidationError("empty range");
  return out;
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    s += ' ';
    s += a.find_first_of(" \t") == std::string::npos ? a : "'" + a + "'";
  }
  return s;
}

void echo_header(std::ostream& out, const std::vector<std::string>& args, const std::string& columns) {
  out << "# mlnet" << join(args) << '\n' << columns << '\n';
}

// Evaluates fn(0..n-1) on worker threads; results and errors come back in order.
std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& fn) {
  std::vector<double> results(n, 0.0);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min<std::size_t>(mc::resolve_threads(0), n);
  auto body = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

BaseGraph load_graph(const std::string& topology, const std::string& graph_file) {
  if (!topology.empty() && !graph_file.empty()) throw ValidationError("give either --topology or --graph, not both");
  if (!topology.empty()) {
    auto g = builtin_topology(topology);
    if (!g) throw ValidationError("unknown topology '" + topology + "'");
    return *g;
  }
  if (graph_file.empty()) throw ValidationError("a graph is required (--topology or --graph)");
  std::ifstream in(graph_file);
  if (!in) throw ValidationError("cannot open graph file '" + graph_file + "'");
  return read_graph(in);
}

std::ifstream open_input(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + what + " '" + path + "'");
  return in;
}

LinkConfiguration parse_config(const std::string& text, std::size_t num_links) {
  if (text == "all-ones") return LinkConfiguration::all_ones(num_links);
  if (text == "all-zeros") return LinkConfiguration(num_links);
  auto x = LinkConfiguration::parse(text);
  if (x.size() != num_links) {
    throw ValidationError("configuration has " + std::to_string(x.size()) + " links, graph has " + std::to_string(num_links));
  }
  return x;
}

double deviation_in_se(double exact, const mc::Estimate& e) {
  const double diff = std::abs(exact - e.mean);
  if (e.std_error > 0.0) return diff / e.std_error;
  return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

void report_verify(std::ostream& out, std::uint64_t replications, std::uint64_t seed, double max_dev) {
  out << "# verify replications=" << replications << " seed=" << seed << " max_deviation_se=" << format_real(max_dev)
      << '\n';
}

// One sweep list may hold several values; the rest must be single values.
std::string pick_sweep_var(const std::vector<std::pair<std::string, std::size_t>>& sizes) {
  std::string var;
  for (const auto& [name, size] : sizes) {
    if (size > 1) {
      if (!var.empty()) throw ValidationError("only one of the swept values may be a range (" + var + ", " + name + ")");
      var = name;
    }
  }
  return var.empty() ? sizes.front().first : var;
}

struct Common {
  bool verify = false;
  std::uint64_t replications = 100000;
  std::uint64_t seed = 1;
};

void add_verify_options(CLI::App* cmd, Common& c) {
  cmd->add_flag("--verify", c.verify, "Cross-check against Monte Carlo simulation");
  cmd->add_option("--replications", c.replications, "Monte Carlo replications for --verify")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Monte Carlo seed for --verify");
}

struct LineArgs {
  std::string n = "20";
  std::string M = "1";
  std::string q;
  std::optional<double> q_power;
  std::string d = "1";
  std::string metric = "cluster";
  int node = 1;
  std::string config;
  Common common;
};

int cmd_line_metrics(const LineArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  if (a.q.empty() == !a.q_power.has_value()) throw ValidationError("give exactly one of --q and --q-power");
  const auto ns = parse_int_list(a.n);
  const auto Ms = parse_int_list(a.M);
  const auto qs = a.q.empty() ? std::vector<double>{0.0} : parse_real_list(a.q);
  const auto ds = a.q_power ? parse_real_list(a.d) : std::vector<double>{1.0};
  const std::string var = pick_sweep_var({{"M", Ms.size()}, {"n", ns.size()}, {"q", qs.size()}, {"d", ds.size()}});
  const std::size_t count = std::max({ns.size(), Ms.size(), qs.size(), ds.size()});
  const auto at = [](const auto& v, std::size_t i) { return v.size() == 1 ? v[0] : v[i]; };

  struct Point {
    line::LineSpec spec;
    double sweep_value;
  };
  std::vector<Point> points;
  for (std::size_t i = 0; i < count; ++i) {
    line::LineSpec spec{at(ns, i), 0.0, at(Ms, i)};
    if (a.q_power) {
      spec.q = at(ds, i) * std::pow(static_cast<double>(spec.M), -*a.q_power);
    } else {
      spec.q = at(qs, i);
    }
    spec.validate();
    const double sv = var == "M" ? spec.M : var == "n" ? spec.n : var == "q" ? spec.q : at(ds, i);
    points.push_back({spec, sv});
  }
  for (const auto& p : points) {
    if (a.metric == "cluster" && (a.node < 1 || a.node > p.spec.n + 1)) {
      throw ValidationError("--node must lie in 1..n+1");
    }
    if (a.metric == "config" && LinkConfiguration::parse(a.config).size() != static_cast<std::size_t>(p.spec.n)) {
      throw ValidationError("--config must have n characters");
    }
  }
  const auto values = parallel_map(points.size(), [&](std::size_t i) {
    const auto& spec = points[i].spec;
    if (a.metric == "cluster") return line::expected_cluster_size(spec.n, a.node, spec);
    if (a.metric == "links") return line::expected_active_links(spec.n, spec);
    if (a.metric == "config") return line::config_prob(LinkConfiguration::parse(a.config), spec);
    return line::q_all_zero(spec.n, spec);
  });

  echo_header(out, args, "sweep_var,value,metric");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string sv = var == "M" || var == "n" ? std::to_string(static_cast<long long>(points[i].sweep_value))
                                                    : format_real(points[i].sweep_value);
    out << var << ',' << sv << ',' << format_real(values[i]) << '\n';
  }

  if (a.common.verify) {
    double max_dev = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& spec = points[i].spec;
      const BaseGraph g = path_graph(static_cast<std::size_t>(spec.n));
      mc::SimConfig cfg;
      cfg.replications = a.common.replications;
      cfg.seed = a.common.seed;
      if (a.metric == "cluster") cfg.cluster_nodes = {static_cast<NodeId>(a.node - 1)};
      if (a.metric == "links") cfg.active_link_count = true;
      if (a.metric == "config") cfg.target_configs = {LinkConfiguration::parse(a.config)};
      if (a.metric == "allzero") cfg.target_configs = {LinkConfiguration(g.num_links())};
      const auto report = mc::simulate(g, ModelParams::uniform(g, spec.M, 1, 1.0, spec.q), cfg);
      const mc::Estimate e = a.metric == "cluster" ? report.cluster_size.begin()->second
                             : a.metric == "links" ? *report.active_links
                                                   : report.target_config_prob[0];
      max_dev = std::max(max_dev, deviation_in_se(values[i], e));
    }
    report_verify(out, a.common.replications, a.common.seed, max_dev);
  }
  return kOk;
}

struct TreeArgs {
  std::string topology;
  std::string graph;
  std::string params;
  std::string q;
  std::string M;
  double p = 1.0;
  int K = 1;
  std::string config = "all-ones";
  std::size_t root = 0;
  Common common;
};

int cmd_tree_prob(const TreeArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const BaseGraph g = load_graph(a.topology, a.graph);
  if (!g.is_tree()) throw ValidationError("tree-prob requires a tree");
  ModelParams base;
  if (!a.params.empty()) {
    auto in = open_input(a.params, "parameter file");
    base = read_params(in, g);
  } else {
    if (a.q.empty() || a.M.empty()) throw ValidationError("--q and --M are required without --params");
    base = ModelParams::uniform(g, 1, a.K, a.p, 0.5);
  }
  const auto Ms = a.M.empty() ? std::vector<int>{base.M} : parse_int_list(a.M);
  const auto qs = a.q.empty() ? std::vector<double>{} : parse_real_list(a.q);
  const std::string var = pick_sweep_var({{"M", Ms.size()}, {"q", qs.size()}});
  const std::size_t count = std::max(Ms.size(), qs.size());
  const LinkConfiguration x = parse_config(a.config, g.num_links());

  std::vector<ModelParams> points;
  for (std::size_t i = 0; i < count; ++i) {
    ModelParams params = base;
    params.M = Ms.size() == 1 ? Ms[0] : Ms[i];
    if (!qs.empty()) params.q.assign(g.num_nodes(), qs.size() == 1 ? qs[0] : qs[i]);
    validate_model(g, params).throw_if_invalid();
    points.push_back(std::move(params));
  }
  const tree::RootedTree rooted(g, a.root);
  const auto values = parallel_map(points.size(), [&](std::size_t i) { return tree::TreeDp(rooted, points[i]).config_prob(x); });

  echo_header(out, args, "sweep_var,value,metric");
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << var << ',' << (var == "M" ? std::to_string(points[i].M) : format_real(points[i].q[0])) << ','
        << format_real(values[i]) << '\n';
  }
  if (a.common.verify) {
    double max_dev = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      mc::SimConfig cfg;
      cfg.replications = a.common.replications;
      cfg.seed = a.common.seed;
      cfg.target_configs = {x};
      const auto report = mc::simulate(g, points[i], cfg);
      max_dev = std::max(max_dev, deviation_in_se(values[i], report.target_config_prob[0]));
    }
    report_verify(out, a.common.replications, a.common.seed, max_dev);
  }
  return kOk;
}

struct AsymArgs {
  std::string topology;
  std::string graph;
  std::string scaling;
  std::string alpha = "0";
  std::string beta = "1/2";
  double c = 1.0;
  double d = 1.0;
  int K = 1;
  std::string metric = "lambda";
  std::string config = "all-ones";
  std::string n = "1..20";
  double p_c = asymptotic::kSquareLatticeBondThreshold;
};

int cmd_asymptotic(const AsymArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  using namespace asymptotic;
  const Rational alpha = parse_rational(a.alpha);
  const Rational beta = parse_rational(a.beta);
  if (a.K < 1) throw ValidationError("K must be at least 1");

  if (a.metric == "regime") {
    const auto r = trichotomy(alpha, beta, a.c, a.d, a.K);
    echo_header(out, args, "sweep_var,value,metric");
    out << "regime," << regime_name(r.regime) << ',' << format_real(r.link_prob) << '\n';
    return kOk;
  }
  if (a.metric == "threshold") {
    const double t = giant_component_threshold(a.p_c);
    echo_header(out, args, "sweep_var,value,metric");
    out << "p_c," << format_real(a.p_c) << ',' << format_real(t) << '\n';
    return kOk;
  }
  if (a.metric == "cluster" || a.metric == "links") {
    const auto ns = parse_int_list(a.n);
    const Rational s = alpha + Rational(2) * beta;
    const Rational one(1);
    const Rate rate = s > one ? Rate::zero() : s < one ? Rate::infinite() : Rate::finite(a.c * a.d * a.d);
    echo_header(out, args, "sweep_var,value,metric");
    for (int n : ns) {
      const auto m = limit_cluster_metrics(n, rate, a.K);
      out << "n," << n << ',' << format_real(a.metric == "cluster" ? m.expected_cluster_size : m.expected_active_links)
          << '\n';
    }
    return kOk;
  }

  const BaseGraph g = load_graph(a.topology, a.graph);
  ScalingSpec spec;
  if (!a.scaling.empty()) {
    auto in = open_input(a.scaling, "scaling file");
    spec = read_scaling(in, g);
  } else {
    spec = ScalingSpec::uniform(g, alpha, beta, a.c, a.d);
  }
  if (a.metric == "lambda") {
    const auto limit = poisson_lambda(spec, g);
    echo_header(out, args, "sweep_var,value,metric");
    for (LinkId l = 0; l < g.num_links(); ++l) out << "link," << l << ',' << limit.lambda[l].to_string() << '\n';
    return kOk;
  }
  if (a.metric == "regularity") {
    const auto violations = check_regularity(spec, g);
    echo_header(out, args, "sweep_var,value,metric");
    for (const auto& v : violations) {
      out << "# " << v.message() << '\n';
      out << "node," << v.node << ',' << v.critical_neighbors.size() << '\n';
    }
    return kOk;
  }
  if (a.metric == "config") {
    const LinkConfiguration x = parse_config(a.config, g.num_links());
    const double prob = limit_config_prob(x, spec, g, a.K);
    echo_header(out, args, "sweep_var,value,metric");
    out << "config," << x.to_string() << ',' << format_real(prob) << '\n';
    return kOk;
  }
  throw ValidationError("unknown metric '" + a.metric + "'");
}

struct SimArgs {
  std::string topology;
  std::string graph;
  std::string params;
  std::string layer_params;
  int M = 1;
  int K = 1;
  double p = 1.0;
  double q = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t replications = 100000;
  unsigned threads = 0;
  std::vector<std::string> stats{"marginals"};
};

void print_estimate(std::ostream& out, const std::string& stat, const std::string& key, const mc::Estimate& e) {
  out << stat << ',' << key << ',' << format_real(e.mean) << ',' << format_real(e.std_error) << '\n';
}

int cmd_simulate(const SimArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const BaseGraph g = load_graph(a.topology, a.graph);
  if (!a.params.empty() && !a.layer_params.empty()) throw ValidationError("give either --params or --layer-params");
  mc::SimConfig cfg;
  cfg.seed = a.seed;
  cfg.replications = a.replications;
  cfg.threads = a.threads;
  bool marginals = false;
  for (const auto& s : a.stats) {
    if (s == "marginals") {
      marginals = true;
    } else if (s == "config") {
      cfg.config_counts = true;
    } else if (s == "links") {
      cfg.active_link_count = true;
    } else if (s.rfind("cluster:", 0) == 0) {
      const int node = parse_number<int>(s.substr(8));
      if (node < 0) throw ValidationError("cluster node must be non-negative");
      cfg.cluster_nodes.push_back(static_cast<NodeId>(node));
    } else if (s.rfind("multiplicity:", 0) == 0) {
      for (int l : parse_int_list(s.substr(13))) cfg.multiplicity_links.push_back(static_cast<LinkId>(l));
    } else if (s.rfind("target:", 0) == 0) {
      cfg.target_configs.push_back(parse_config(s.substr(7), g.num_links()));
    } else {
      throw ValidationError("unknown statistic '" + s + "'");
    }
  }

  mc::EstimateReport report;
  std::optional<asymptotic::NonIdenticalDiagnostics> diagnostics;
  if (!a.layer_params.empty()) {
    auto in = open_input(a.layer_params, "layer parameter file");
    const NonIdenticalParams params = read_layer_params(in, g);
    report = mc::simulate(g, params, cfg);
    diagnostics = asymptotic::nonidentical_diagnostics(params, g);
  } else {
    ModelParams params = ModelParams::uniform(g, a.M, a.K, a.p, a.q);
    if (!a.params.empty()) {
      auto in = open_input(a.params, "parameter file");
      params = read_params(in, g);
    }
    report = mc::simulate(g, params, cfg);
  }

  echo_header(out, args, "statistic,key,estimate,std_error");
  if (marginals) {
    for (LinkId l = 0; l < g.num_links(); ++l) print_estimate(out, "link_active", std::to_string(l), report.link_active[l]);
  }
  for (const auto& [mask, count] : report.config_counts) {
    print_estimate(out, "config", LinkConfiguration::from_mask(mask, g.num_links()).to_string(), report.config_prob(mask));
  }
  if (report.active_links) print_estimate(out, "active_links", "", *report.active_links);
  for (const auto& [node, e] : report.cluster_size) print_estimate(out, "cluster_size", std::to_string(node), e);
  for (std::size_t t = 0; t < cfg.target_configs.size(); ++t) {
    print_estimate(out, "target", cfg.target_configs[t].to_string(), report.target_config_prob[t]);
  }
  if (report.multiplicity) {
    const auto& table = *report.multiplicity;
    const auto pmf = table.pmf();
    const std::size_t base = static_cast<std::size_t>(table.M) + 1;
    for (std::size_t idx = 0; idx < pmf.size(); ++idx) {
      if (table.counts[idx] == 0) continue;
      std::string key;
      std::size_t rest = idx;
      for (std::size_t k = 0; k < table.links.size(); ++k) {
        key += (k ? ";" : "") + std::to_string(rest % base);
        rest /= base;
      }
      const double se = std::sqrt(pmf[idx] * (1.0 - pmf[idx]) / static_cast<double>(report.replications));
      out << "multiplicity," << key << ',' << format_real(pmf[idx]) << ',' << format_real(se) << '\n';
    }
  }
  if (diagnostics) {
    for (LinkId l = 0; l < g.num_links(); ++l) {
      out << "sum_r," << l << ',' << format_real(diagnostics->sum_r[l]) << ",\n";
      out << "max_r," << l << ',' << format_real(diagnostics->max_r[l]) << ",\n";
    }
    for (const auto& o : diagnostics->overlaps) {
      out << "overlap," << o.first << '-' << o.second << '@' << o.shared << ',' << format_real(o.R) << ",\n";
    }
  }
  return kOk;
}

struct FeasArgs {
  std::string topology;
  std::string graph;
  std::string config;
  int M = 1;
};

int cmd_feasible(const FeasArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const BaseGraph g = load_graph(a.topology, a.graph);
  const LinkConfiguration x = parse_config(a.config, g.num_links());
  const auto result = feasibility::mcc_check(x, a.M, g);
  out << "# mlnet" << join(args) << '\n';
  out << (result.feasible ? "FEASIBLE" : "INFEASIBLE") << '\n';
  out << "min_cover_size," << result.min_cover_size << '\n';
  if (result.feasible) {
    for (const auto& clique : result.witness.cliques) {
      out << "clique,";
      for (std::size_t i = 0; i < clique.size(); ++i) out << (i ? " " : "") << clique[i];
      out << '\n';
    }
  }
  return kOk;
}

void add_graph_options(CLI::App* cmd, std::string& topology, std::string& graph) {
  cmd->add_option("--topology", topology, "Built-in graph: star-fig7, btree5, line<n>, clique<n>");
  cmd->add_option("--graph", graph, "Graph file ('n m' then one 'u v' line per link)");
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) { return parse_list<int>(text); }
std::vector<double> parse_real_list(const std::string& text) { return parse_list<double>(text); }

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact, asymptotic and simulated link statistics of merged multilayer networks", "mlnet"};
  app.require_subcommand(1);

  LineArgs line_args;
  auto* line_cmd = app.add_subcommand("line-metrics", "Line network metrics over a parameter sweep");
  line_cmd->add_option("--n", line_args.n, "Number of links (value or range)");
  line_cmd->add_option("--M", line_args.M, "Number of layers (value or range)");
  line_cmd->add_option("--q", line_args.q, "Node activation probability (value or range)");
  line_cmd->add_option("--q-power", line_args.q_power, "Couple q = d M^-a");
  line_cmd->add_option("--d", line_args.d, "Coefficient d for --q-power (value or range)");
  line_cmd->add_option("--metric", line_args.metric, "cluster, links, config or allzero")
      ->check(CLI::IsMember({"cluster", "links", "config", "allzero"}));
  line_cmd->add_option("--node", line_args.node, "Node for the cluster metric, 1..n+1");
  line_cmd->add_option("--config", line_args.config, "Bitstring for the config metric, link 1 first");
  add_verify_options(line_cmd, line_args.common);

  TreeArgs tree_args;
  auto* tree_cmd = app.add_subcommand("tree-prob", "Configuration probability on a tree");
  add_graph_options(tree_cmd, tree_args.topology, tree_args.graph);
  tree_cmd->add_option("--params", tree_args.params, "Parameter file");
  tree_cmd->add_option("--q", tree_args.q, "Uniform node activation probability (value or range)");
  tree_cmd->add_option("--M", tree_args.M, "Number of layers (value or range)");
  tree_cmd->add_option("--p", tree_args.p, "Uniform link survival probability");
  tree_cmd->add_option("--K", tree_args.K, "Threshold");
  tree_cmd->add_option("--config", tree_args.config, "all-ones, all-zeros or a bitstring");
  tree_cmd->add_option("--root", tree_args.root, "Root node of the recursion");
  add_verify_options(tree_cmd, tree_args.common);

  AsymArgs asym_args;
  auto* asym_cmd = app.add_subcommand("asymptotic", "Large-M limits under power-law scaling");
  add_graph_options(asym_cmd, asym_args.topology, asym_args.graph);
  asym_cmd->add_option("--scaling", asym_args.scaling, "Scaling file");
  asym_cmd->add_option("--alpha", asym_args.alpha, "Uniform link exponent (rational)");
  asym_cmd->add_option("--beta", asym_args.beta, "Uniform node exponent (rational)");
  asym_cmd->add_option("--c", asym_args.c, "Uniform link coefficient");
  asym_cmd->add_option("--d", asym_args.d, "Uniform node coefficient");
  asym_cmd->add_option("--K", asym_args.K, "Threshold");
  asym_cmd->add_option("--metric", asym_args.metric, "lambda, regularity, config, regime, cluster, links or threshold")
      ->check(CLI::IsMember({"lambda", "regularity", "config", "regime", "cluster", "links", "threshold"}));
  asym_cmd->add_option("--config", asym_args.config, "Configuration for the config metric");
  asym_cmd->add_option("--n", asym_args.n, "Line lengths for cluster and links (value or range)");
  asym_cmd->add_option("--pc", asym_args.p_c, "Bond percolation threshold for the threshold metric");

  SimArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimates");
  add_graph_options(sim_cmd, sim_args.topology, sim_args.graph);
  sim_cmd->add_option("--params", sim_args.params, "Parameter file");
  sim_cmd->add_option("--layer-params", sim_args.layer_params, "Per-layer parameter file");
  sim_cmd->add_option("--M", sim_args.M, "Number of layers");
  sim_cmd->add_option("--K", sim_args.K, "Threshold");
  sim_cmd->add_option("--p", sim_args.p, "Uniform link survival probability");
  sim_cmd->add_option("--q", sim_args.q, "Uniform node activation probability");
  sim_cmd->add_option("--seed", sim_args.seed, "Random seed")->required();
  sim_cmd->add_option("--replications", sim_args.replications, "Replications")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", sim_args.threads, "Worker threads (default MLNET_THREADS or all cores)");
  sim_cmd->add_option("--stat", sim_args.stats,
                      "marginals, config, links, cluster:<node>, multiplicity:<links>, target:<bits> (repeatable)");

  FeasArgs feas_args;
  auto* feas_cmd = app.add_subcommand("feasible", "Feasibility of a configuration on a complete base graph");
  add_graph_options(feas_cmd, feas_args.topology, feas_args.graph);
  feas_cmd->add_option("--config", feas_args.config, "Bitstring")->required();
  feas_cmd->add_option("--M", feas_args.M, "Number of layers")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  try {
    if (*line_cmd) return cmd_line_metrics(line_args, args, out);
    if (*tree_cmd) return cmd_tree_prob(tree_args, args, out);
    if (*asym_cmd) return cmd_asymptotic(asym_args, args, out);
    if (*sim_cmd) return cmd_simulate(sim_args, args, out);
    if (*feas_cmd) return cmd_feasible(feas_args, args, out);
  } catch (const SizeCapError& e) {
    err << "size cap exceeded: " << e.what() << '\n';
    return kSizeCapError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace mlnet::cli
