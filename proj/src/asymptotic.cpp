#include "mlnet/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "mlnet/errors.hpp"
#include "mlnet/pmf.hpp"

namespace mlnet::asymptotic {

namespace {

// Mixed rational/int comparisons recurse endlessly with boost 1.74 under
// C++20 operator rewriting, so compare against rational constants.
const Rational kZero{0};
const Rational kOne{1};
const Rational kTwo{2};

Rational exponent_sum(const ScalingSpec& spec, const BaseGraph& g, LinkId l) {
  const auto& [u, v] = g.link(l);
  return spec.alpha[l] + spec.beta[u] + spec.beta[v];
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto fail = [&] { return ValidationError("not a rational number: '" + text + "'"); };
  if (text.empty()) throw fail();
  try {
    if (const auto slash = text.find('/'); slash != std::string::npos) {
      std::size_t a = 0;
      std::size_t b = 0;
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      const std::int64_t n = std::stoll(num, &a);
      const std::int64_t d = std::stoll(den, &b);
      if (a != num.size() || b != den.size() || d == 0) throw fail();
      return Rational(n, d);
    }
    const auto dot = text.find('.');
    std::string digits = text;
    std::int64_t den = 1;
    if (dot != std::string::npos) {
      const std::string frac = text.substr(dot + 1);
      if (frac.size() > 15) throw fail();
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      digits = text.substr(0, dot) + frac;
    }
    std::size_t used = 0;
    const std::int64_t n = std::stoll(digits, &used);
    if (used != digits.size()) throw fail();
    const bool negative = !text.empty() && text[0] == '-';
    return Rational(negative && n == 0 ? 0 : n, den);
  } catch (const std::logic_error&) {
    throw fail();
  }
}

ScalingSpec ScalingSpec::uniform(const BaseGraph& g, Rational alpha, Rational beta, double c, double d) {
  return ScalingSpec{std::vector<Rational>(g.num_links(), alpha), std::vector<double>(g.num_links(), c),
                     std::vector<Rational>(g.num_nodes(), beta), std::vector<double>(g.num_nodes(), d)};
}

void ScalingSpec::validate(const BaseGraph& g) const {
  if (alpha.size() != g.num_links() || c.size() != g.num_links()) {
    throw ValidationError("scaling spec must give alpha and c for every link");
  }
  if (beta.size() != g.num_nodes() || d.size() != g.num_nodes()) {
    throw ValidationError("scaling spec must give beta and d for every node");
  }
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    if (alpha[l] < kZero) throw ValidationError("alpha must be non-negative");
    if (!(c[l] > 0.0) || !std::isfinite(c[l])) throw ValidationError("c must be positive");
  }
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] < kZero) throw ValidationError("beta must be non-negative");
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) throw ValidationError("d must be positive");
  }
}

ModelParams ScalingSpec::at(const BaseGraph& g, int M, int K) const {
  validate(g);
  ModelParams params{M, K, {}, {}};
  const double m = static_cast<double>(M);
  for (std::size_t l = 0; l < alpha.size(); ++l) params.p.push_back(std::min(1.0, c[l] * std::pow(m, -boost::rational_cast<double>(alpha[l]))));
  for (std::size_t i = 0; i < beta.size(); ++i) params.q.push_back(std::min(1.0, d[i] * std::pow(m, -boost::rational_cast<double>(beta[i]))));
  return params;
}

ScalingSpec read_scaling(std::istream& in, const BaseGraph& g) {
  struct Line {
    std::string text;
    std::vector<std::string> words;
  };
  std::vector<Line> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string text = raw.substr(0, raw.find('#'));
    std::istringstream words(text);
    Line line{raw, {}};
    for (std::string w; words >> w;) line.words.push_back(w);
    if (!line.words.empty()) lines.push_back(std::move(line));
  }
  const auto bad = [](const Line& l) { return ValidationError("scaling file: cannot parse '" + l.text + "'"); };
  const auto number = [&](const Line& l, const std::string& w) {
    try {
      std::size_t used = 0;
      const double v = std::stod(w, &used);
      if (used != w.size()) throw bad(l);
      return v;
    } catch (const std::logic_error&) {
      throw bad(l);
    }
  };
  const auto node = [&](const Line& l, const std::string& w) {
    const double v = number(l, w);
    if (v < 0 || v != std::floor(v) || v >= static_cast<double>(g.num_nodes())) {
      throw ValidationError("scaling file: no node " + w + " in '" + l.text + "'");
    }
    return static_cast<NodeId>(v);
  };
  const auto link = [&](const Line& l, const std::string& a, const std::string& b) {
    const auto found = g.find_link(node(l, a), node(l, b));
    if (!found) throw ValidationError("scaling file: no link " + a + "-" + b + " in '" + l.text + "'");
    return *found;
  };

  ScalingSpec spec = ScalingSpec::uniform(g, kZero, kZero);
  for (const auto& l : lines) {
    const auto& w = l.words;
    if (w.size() != 2) continue;
    if (w[0] == "alpha") spec.alpha.assign(g.num_links(), parse_rational(w[1]));
    else if (w[0] == "beta") spec.beta.assign(g.num_nodes(), parse_rational(w[1]));
    else if (w[0] == "c") spec.c.assign(g.num_links(), number(l, w[1]));
    else if (w[0] == "d") spec.d.assign(g.num_nodes(), number(l, w[1]));
    else throw bad(l);
  }
  for (const auto& l : lines) {
    const auto& w = l.words;
    if (w.size() == 2) continue;
    if (w[0] == "alpha" && w.size() == 4) spec.alpha[link(l, w[1], w[2])] = parse_rational(w[3]);
    else if (w[0] == "c" && w.size() == 4) spec.c[link(l, w[1], w[2])] = number(l, w[3]);
    else if (w[0] == "beta" && w.size() == 3) spec.beta[node(l, w[1])] = parse_rational(w[2]);
    else if (w[0] == "d" && w.size() == 3) spec.d[node(l, w[1])] = number(l, w[2]);
    else throw bad(l);
  }
  spec.validate(g);
  return spec;
}

Rate Rate::finite(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw ValidationError("finite rate must be a non-negative number");
  return value == 0.0 ? zero() : Rate(Kind::Finite, value);
}

double Rate::value() const {
  if (kind_ == Kind::Infinite) throw ValidationError("infinite rate has no finite value");
  return value_;
}

std::string Rate::to_string() const {
  if (kind_ == Kind::Infinite) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << value_;
  return out.str();
}

PoissonLimit poisson_lambda(const ScalingSpec& spec, const BaseGraph& g) {
  spec.validate(g);
  PoissonLimit limit;
  for (LinkId l = 0; l < g.num_links(); ++l) {
    const Rational s = exponent_sum(spec, g, l);
    if (s > kOne) {
      limit.lambda.push_back(Rate::zero());
    } else if (s < kOne) {
      limit.lambda.push_back(Rate::infinite());
    } else {
      const auto& [u, v] = g.link(l);
      limit.lambda.push_back(Rate::finite(spec.c[l] * spec.d[u] * spec.d[v]));
    }
  }
  return limit;
}

std::string RegularityViolation::message() const {
  std::ostringstream out;
  out << "node " << node << " has beta = " << beta.numerator();
  if (beta.denominator() != 1) out << '/' << beta.denominator();
  out << " >= 1 and " << critical_neighbors.size()
      << " critical links (to nodes";
  for (NodeId v : critical_neighbors) out << ' ' << v;
  out << ')';
  return out.str();
}

std::vector<RegularityViolation> check_regularity(const ScalingSpec& spec, const BaseGraph& g) {
  spec.validate(g);
  std::vector<RegularityViolation> violations;
  for (NodeId k = 0; k < g.num_nodes(); ++k) {
    std::vector<NodeId> critical;
    for (const auto& [neighbor, link] : g.incident(k)) {
      if (exponent_sum(spec, g, link) == kOne) critical.push_back(neighbor);
    }
    if (critical.size() >= 2 && spec.beta[k] >= kOne) {
      std::sort(critical.begin(), critical.end());
      violations.push_back({k, std::move(critical), spec.beta[k]});
    }
  }
  return violations;
}

double limit_link_prob(const Rate& lambda, int K) {
  if (K < 1) throw ValidationError("K must be at least 1");
  switch (lambda.kind()) {
    case Rate::Kind::Zero:
      return 0.0;
    case Rate::Kind::Infinite:
      return 1.0;
    case Rate::Kind::Finite:
      break;
  }
  return poisson_ccdf(K, lambda.value());
}

double limit_config_prob(const LinkConfiguration& x, const PoissonLimit& limit, int K) {
  if (x.size() != limit.lambda.size()) throw ValidationError("configuration length does not match link count");
  double prob = 1.0;
  for (LinkId l = 0; l < x.size(); ++l) {
    const double a = limit_link_prob(limit.lambda[l], K);
    prob *= x[l] ? a : 1.0 - a;
  }
  return prob;
}

double limit_config_prob(const LinkConfiguration& x, const ScalingSpec& spec, const BaseGraph& g, int K) {
  const auto violations = check_regularity(spec, g);
  if (!violations.empty()) {
    std::string msg = "regularity condition violated:";
    for (const auto& v : violations) msg += " [" + v.message() + "]";
    throw ValidationError(msg);
  }
  return limit_config_prob(x, poisson_lambda(spec, g), K);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Empty:
      return "empty";
    case Regime::Full:
      return "full";
    case Regime::ErdosRenyiLike:
      return "erdos-renyi-like";
  }
  return "unknown";
}

RegimeReport trichotomy(Rational alpha, Rational beta, double c, double d, int K) {
  if (alpha < kZero || beta < kZero) throw ValidationError("exponents must be non-negative");
  if (!(c > 0.0) || !(d > 0.0)) throw ValidationError("coefficients must be positive");
  const Rational s = alpha + kTwo * beta;
  if (s > kOne) return {Regime::Empty, 0.0};
  if (s < kOne) return {Regime::Full, 1.0};
  return {Regime::ErdosRenyiLike, limit_link_prob(Rate::finite(c * d * d), K)};
}

double giant_component_threshold(double p_c) {
  if (!(p_c > 0.0 && p_c < 1.0)) throw ValidationError("percolation threshold must lie in (0, 1)");
  return std::sqrt(-std::log1p(-p_c));
}

LimitLineMetrics limit_cluster_metrics(int n, const Rate& lambda, int K) {
  if (n < 1) throw ValidationError("n must be at least 1");
  const double a = limit_link_prob(lambda, K);
  LimitLineMetrics out{a, 0.0, n * a};
  if (a >= 1.0) {
    out.expected_cluster_size = n + 1.0;
  } else {
    out.expected_cluster_size = (1.0 - std::pow(a, n + 1)) / (1.0 - a);
  }
  return out;
}

NonIdenticalDiagnostics nonidentical_diagnostics(const NonIdenticalParams& params, const BaseGraph& g) {
  const int M = params.num_layers();
  if (static_cast<int>(params.q.size()) != M) throw ValidationError("p and q must cover the same layers");
  NonIdenticalDiagnostics out;
  out.sum_r.assign(g.num_links(), 0.0);
  out.max_r.assign(g.num_links(), 0.0);
  for (int m = 0; m < M; ++m) {
    const auto& p = params.p[m];
    const auto& q = params.q[m];
    if (p.size() != g.num_links() || q.size() != g.num_nodes()) throw ValidationError("layer parameters do not match graph");
    for (LinkId l = 0; l < g.num_links(); ++l) {
      const auto& [u, v] = g.link(l);
      const double r = p[l] * q[u] * q[v];
      out.sum_r[l] += r;
      out.max_r[l] = std::max(out.max_r[l], r);
    }
  }
  for (NodeId k = 0; k < g.num_nodes(); ++k) {
    const auto& inc = g.incident(k);
    for (std::size_t a = 0; a < inc.size(); ++a) {
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        double R = 0.0;
        for (int m = 0; m < M; ++m) {
          const auto& p = params.p[m];
          const auto& q = params.q[m];
          R += p[inc[a].link] * p[inc[b].link] * q[k] * q[inc[a].neighbor] * q[inc[b].neighbor];
        }
        out.overlaps.push_back({std::min(inc[a].link, inc[b].link), std::max(inc[a].link, inc[b].link), k, R});
      }
    }
  }
  return out;
}

double line3_no_link_prob(double q1, double q2, double q3, double p12, double p23, double M) {
  const double hit = q2 * (1.0 - (1.0 - q1 * p12) * (1.0 - q3 * p23));
  return std::exp(M * std::log1p(-hit));
}

double binomial_poisson_tv(std::int64_t M, double r) {
  if (M < 1 || M > std::int64_t{1} << 30) throw ValidationError("M out of range");
  if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("r must lie in [0, 1]");
  const double lambda = static_cast<double>(M) * r;
  const int n = static_cast<int>(M);
  double diff = 0.0;
  double mass_b = 0.0;
  double mass_p = 0.0;
  for (int w = 0; w <= n; ++w) {
    const double b = binom_pmf(w, n, r);
    const double p = poisson_pmf(w, lambda);
    diff += std::abs(b - p);
    mass_b += b;
    mass_p += p;
    if (w > lambda && b < 1e-300 && p < 1e-300) break;
  }
  // Mass beyond the loop (Poisson above M, or negligible tails).
  diff += std::max(0.0, 1.0 - mass_b) + std::max(0.0, 1.0 - mass_p);
  return 0.5 * diff;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("distributions of different sizes");
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += std::abs(a[i] - b[i]);
  return 0.5 * diff;
}

}  // namespace mlnet::asymptotic
