#pragma once

#include <array>
#include <span>
#include <vector>

#include "mlnet/model.hpp"

// Configuration probabilities and generating functions for the line network:
// n links in series over nodes 1..n+1, uniform activation q, p = 1, K = 1.
// Link j joins nodes j and j+1; configurations are indexed link 1 -> bit 0.
namespace mlnet::line {

struct LineSpec {
  int n = 1;      // number of links
  double q = 0.5; // node activation probability, 0 < q <= 1 (q = 1 is a degenerate branch)
  int M = 1;      // number of layers

  // Throws ValidationError unless n >= 1, M >= 1 and 0 < q <= 1.
  void validate() const;
};

// P_1(q)..P_N(q); values[k] holds P_k (values[0] is unused and 0).
struct PolyPTable {
  double q = 0.0;
  std::vector<double> values;

  double operator[](int k) const { return values[static_cast<std::size_t>(k)]; }
  int max_k() const { return static_cast<int>(values.size()) - 1; }
};

PolyPTable poly_p_table(double q, int N);

// Single-layer probability that a path of k nodes has no two adjacent active
// nodes: S_k = 1 - (k-1) q^2 + P_k(q), with S_1 = 1, S_2 = 1 - q^2.
double single_layer_empty(const PolyPTable& table, int k);

struct HCoefficients {
  std::vector<double> h;                    // h_0..h_n for the configuration
  std::array<std::vector<double>, 2> h_hat; // h_hat[b][0..n], b = 0 for (0,1,..,1), b = 1 for all-ones
};

// Probability that the first n links are all inactive, given the last node
// (node n+1) belongs to exactly m of the M layers. n = 0 gives 1.
double q_all_zero_given_m(int n, int m, const LineSpec& spec);

// Probability that all n links are inactive.
double q_all_zero(int n, const LineSpec& spec);

HCoefficients h_coefficients(const LinkConfiguration& x, const LineSpec& spec);

// P[configuration x on spec.n links | node n+1 in m layers].
double config_prob_given_m(const LinkConfiguration& x, int m, const LineSpec& spec);

double config_prob(const LinkConfiguration& x, const LineSpec& spec);

// pgf of the size of the component containing the last node of an n-link
// line, given that node is in m layers.
double cluster_pgf_right(int n, int m, double z, const LineSpec& spec);

// pgf of the size of the component containing node i (1-based) on n links.
double cluster_pgf(int n, int i, double z, const LineSpec& spec);

double expected_cluster_size(int n, int i, const LineSpec& spec);

// pgf of the number of active links among n links, by the recursion over the
// layer count of the last node.
double active_links_pgf(int n, double z, const LineSpec& spec);

// n [1 - (1 - q^2)^M]
double expected_active_links(int n, const LineSpec& spec);

// Operators over functions f: {0..M} -> R with binomial(q) mixing:
//   F(f, m) = sum_{i=0}^{M-m} B(i; M-m, q) f(i)
//   G(f, m) = sum_{i=0}^{M-m} B(i; M-m, q) sum_{j=1}^{m} B(j; m, q) f(i+j)
// f must hold M+1 values.
double apply_f(std::span<const double> f, int m, double q);
double apply_g(std::span<const double> f, int m, double q);

}  // namespace mlnet::line
