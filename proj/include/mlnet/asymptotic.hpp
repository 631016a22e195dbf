#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "mlnet/graph.hpp"
#include "mlnet/model.hpp"

// Large-M limits of the multiplicities W_l and the merged network.
namespace mlnet::asymptotic {

using Rational = boost::rational<std::int64_t>;

// Parses "1/2", "0.25", "3". Decimals are taken exactly.
Rational parse_rational(const std::string& text);

// p_l ~ c_l M^-alpha_l, q_i ~ d_i M^-beta_i.
struct ScalingSpec {
  std::vector<Rational> alpha;  // per link
  std::vector<double> c;        // per link
  std::vector<Rational> beta;   // per node
  std::vector<double> d;        // per node

  static ScalingSpec uniform(const BaseGraph& g, Rational alpha, Rational beta, double c = 1.0, double d = 1.0);
  void validate(const BaseGraph& g) const;

  // Finite-M parameters p_l = min(1, c_l M^-alpha_l), q_i = min(1, d_i M^-beta_i).
  ModelParams at(const BaseGraph& g, int M, int K) const;
};

/*
 * Scaling file, one directive per line ('#' starts a comment):
 *   alpha <r>   c <value>   beta <r>   d <value>     uniform defaults
 *   alpha <u> <v> <r>       c <u> <v> <value>          per link
 *   beta <u> <r>            d <u> <value>              per node
 * Exponents are rationals ("1/2", "0.5"). Defaults: alpha 0, beta 0, c 1, d 1.
 */
ScalingSpec read_scaling(std::istream& in, const BaseGraph& g);

// Limiting Poisson rate; zero and infinity are tags, never floats.
class Rate {
 public:
  enum class Kind { Zero, Finite, Infinite };

  static Rate zero() { return Rate(Kind::Zero, 0.0); }
  static Rate infinite() { return Rate(Kind::Infinite, 0.0); }
  // value 0 maps to zero().
  static Rate finite(double value);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ != Kind::Infinite; }
  // Throws for an infinite rate.
  double value() const;
  std::string to_string() const;

 private:
  Rate(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

struct PoissonLimit {
  std::vector<Rate> lambda;  // per link
};

PoissonLimit poisson_lambda(const ScalingSpec& spec, const BaseGraph& g);

// Nodes k with beta_k >= 1 that touch two or more critical links
// (alpha + beta_i + beta_j = 1).
struct RegularityViolation {
  NodeId node;
  std::vector<NodeId> critical_neighbors;
  Rational beta;

  std::string message() const;
};

std::vector<RegularityViolation> check_regularity(const ScalingSpec& spec, const BaseGraph& g);

// lim P[X_l = 1] = sum_{w >= K} pi(w; lambda).
double limit_link_prob(const Rate& lambda, int K);

// Product of per-link limit marginals.
double limit_config_prob(const LinkConfiguration& x, const PoissonLimit& limit, int K);
// Same, after checking regularity; throws ValidationError naming the nodes.
double limit_config_prob(const LinkConfiguration& x, const ScalingSpec& spec, const BaseGraph& g, int K);

enum class Regime { Empty, Full, ErdosRenyiLike };
std::string regime_name(Regime r);

struct RegimeReport {
  Regime regime;
  double link_prob;  // 0 for Empty, 1 for Full
};

RegimeReport trichotomy(Rational alpha, Rational beta, double c, double d, int K);

// d above which the limit graph percolates, given the bond threshold p_c.
double giant_component_threshold(double p_c);
// Bond percolation threshold of the square lattice.
inline constexpr double kSquareLatticeBondThreshold = 0.5;

struct LimitLineMetrics {
  double link_prob;
  double expected_cluster_size;  // end node of an n-link line
  double expected_active_links;
};

LimitLineMetrics limit_cluster_metrics(int n, const Rate& lambda, int K);

struct LinkPairOverlap {
  LinkId first;
  LinkId second;
  NodeId shared;
  double R;  // sum_m E[W_{m,first} W_{m,second}]
};

struct NonIdenticalDiagnostics {
  std::vector<double> sum_r;  // per link, sum_m p q_i q_j
  std::vector<double> max_r;  // per link
  std::vector<LinkPairOverlap> overlaps;
};

NonIdenticalDiagnostics nonidentical_diagnostics(const NonIdenticalParams& params, const BaseGraph& g);

// Three-node line: P[W_12 = W_23 = 0] = [1 - q2 + q2 (1 - q1 p12)(1 - q3 p23)]^M.
double line3_no_link_prob(double q1, double q2, double q3, double p12, double p23, double M);

// Total variation between Binomial(M, r) and Poisson(M r).
double binomial_poisson_tv(std::int64_t M, double r);

double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace mlnet::asymptotic
