#include "mlnet/pmf.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/binomial.hpp>

namespace mlnet {

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

LogFactorial::LogFactorial(int max_n) : table_(static_cast<std::size_t>(std::max(max_n, 0)) + 1, 0.0) {
  for (std::size_t n = 2; n < table_.size(); ++n) table_[n] = std::lgamma(static_cast<double>(n) + 1.0);
}

double binom_pmf(int m, int M, double q) {
  if (m < 0 || m > M) return 0.0;
  if (q <= 0.0) return m == 0 ? 1.0 : 0.0;
  if (q >= 1.0) return m == M ? 1.0 : 0.0;
  return boost::math::pdf(boost::math::binomial_distribution<double>(M, q), m);
}

std::vector<double> binom_pmf_table(int M, double q) {
  std::vector<double> out(static_cast<std::size_t>(M) + 1);
  for (int m = 0; m <= M; ++m) out[m] = binom_pmf(m, M, q);
  return out;
}

double hypergeom_pmf(int j, int M, int m, int k, const LogFactorial& lf) {
  if (j < 0 || j > m || j > k || k - j > M - m) return 0.0;
  return std::exp(lf.log_choose(m, j) + lf.log_choose(M - m, k - j) - lf.log_choose(M, k));
}

double hypergeom_pmf(int j, int M, int m, int k) {
  if (j < 0 || j > m || j > k || k - j > M - m) return 0.0;
  return std::exp(log_choose(m, j) + log_choose(M - m, k - j) - log_choose(M, k));
}

double binom_ccdf(int K, int j, double p) {
  if (K <= 0) return 1.0;
  if (K > j) return 0.0;
  if (p >= 1.0) return 1.0;
  if (p <= 0.0) return 0.0;
  // Sum the shorter side.
  double tail = 0.0;
  if (K > j / 2) {
    for (int l = K; l <= j; ++l) tail += binom_pmf(l, j, p);
    return std::min(tail, 1.0);
  }
  for (int l = 0; l < K; ++l) tail += binom_pmf(l, j, p);
  return std::max(0.0, 1.0 - tail);
}

std::vector<double> binom_ccdf_table(int K, int max_j, double p) {
  std::vector<double> out(static_cast<std::size_t>(max_j) + 1);
  for (int j = 0; j <= max_j; ++j) out[j] = binom_ccdf(K, j, p);
  return out;
}

double poisson_pmf(int w, double lambda) {
  if (w < 0) return 0.0;
  if (lambda <= 0.0) return w == 0 ? 1.0 : 0.0;
  return std::exp(w * std::log(lambda) - lambda - std::lgamma(w + 1.0));
}

double poisson_ccdf(int K, double lambda) {
  if (K <= 0) return 1.0;
  if (lambda <= 0.0) return 0.0;
  double head = 0.0;
  double term = std::exp(-lambda);
  for (int w = 0; w < K; ++w) {
    head += term;
    term *= lambda / (w + 1);
  }
  return std::max(0.0, 1.0 - head);
}

}  // namespace mlnet
