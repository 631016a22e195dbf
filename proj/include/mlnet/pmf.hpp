#pragma once

#include <vector>

namespace mlnet {

// Table of log(n!) for n = 0..max_n, immutable once built.
class LogFactorial {
 public:
  explicit LogFactorial(int max_n);

  int max_n() const { return static_cast<int>(table_.size()) - 1; }
  double operator()(int n) const { return table_[n]; }
  double log_choose(int n, int k) const { return table_[n] - table_[k] - table_[n - k]; }

 private:
  std::vector<double> table_;
};

// B(m; M, q) = C(M,m) q^m (1-q)^(M-m), evaluated in log space. 0 outside 0..M.
double binom_pmf(int m, int M, double q);

// All of B(0..M; M, q).
std::vector<double> binom_pmf_table(int M, double q);

// H(j; M, m, k) = C(m,j) C(M-m,k-j) / C(M,k): overlap of an m-subset and a
// uniformly random k-subset of M layers. Returns 0 outside the support.
double hypergeom_pmf(int j, int M, int m, int k);
double hypergeom_pmf(int j, int M, int m, int k, const LogFactorial& lf);

// P[Binomial(j, p) >= K]; 1 for K <= 0 and 0 for K > j.
double binom_ccdf(int K, int j, double p);

// P[Binomial(j, p) >= K] for every j = 0..max_j.
std::vector<double> binom_ccdf_table(int K, int max_j, double p);

double poisson_pmf(int w, double lambda);

// P[Poisson(lambda) >= K].
double poisson_ccdf(int K, double lambda);

}  // namespace mlnet
