#include "mlnet/exact_line.hpp"

#include <cmath>
#include <string>

#include "mlnet/errors.hpp"
#include "mlnet/pmf.hpp"

namespace mlnet::line {

void LineSpec::validate() const {
  if (n < 1) throw ValidationError("line needs at least one link");
  if (M < 1) throw ValidationError("M must be at least 1");
  if (!(q > 0.0 && q <= 1.0)) throw ValidationError("q must lie in (0, 1]");
}

PolyPTable poly_p_table(double q, int N) {
  PolyPTable table;
  table.q = q;
  table.values.assign(static_cast<std::size_t>(std::max(N, 2)) + 1, 0.0);
  const double qbar = 1.0 - q;
  const double q3 = q * q * q;
  const double q4 = q3 * q;
  for (int k = 3; k <= N; ++k) {
    table.values[k] = qbar * table.values[k - 1] + q * qbar * table.values[k - 2] + q3 + (k - 3) * q4;
  }
  return table;
}

double single_layer_empty(const PolyPTable& table, int k) {
  if (k <= 1) return 1.0;
  return 1.0 - (k - 1) * table.q * table.q + table[k];
}

namespace {

// Shared per-(q, M) quantities for lines of up to max_n links.
class LineTables {
 public:
  LineTables(const LineSpec& spec, int max_n)
      : q_(spec.q), qbar_(1.0 - spec.q), M_(spec.M), table_(poly_p_table(spec.q, max_n + 1)) {
    empty_pow_.resize(static_cast<std::size_t>(max_n) + 2);
    for (int k = 1; k <= max_n + 1; ++k) empty_pow_[k] = std::pow(single_layer_empty(table_, k), M_);
  }

  int M() const { return M_; }
  double qbar() const { return qbar_; }

  // Q_{0^(k)}: all k links inactive.
  double all_zero(int k) const { return empty_pow_[k + 1]; }

  // Q_{0^(k)}(m)
  double all_zero_given(int k, int m) const {
    if (k == 0) return 1.0;
    const double lead = std::pow(qbar_, m);
    if (k == 1) return lead;
    return lead * std::pow(single_layer_empty(table_, k - 1), m) *
           std::pow(single_layer_empty(table_, k), M_ - m);
  }

  // h_hat[b][0..n]
  std::array<std::vector<double>, 2> h_hat(int n) const {
    std::array<std::vector<double>, 2> out;
    for (int b = 0; b < 2; ++b) {
      auto& hb = out[b];
      hb.assign(static_cast<std::size_t>(n) + 1, 0.0);
      hb[0] = 1.0;
      if (n >= 1) hb[1] = b;
      for (int j = 2; j <= n; ++j) {
        double acc = ((j - b) % 2 == 0 ? 1.0 : -1.0) * all_zero(j - 1);
        for (int r = 1; r < j; ++r) {
          acc += ((j - r - 1) % 2 == 0 ? 1.0 : -1.0) * all_zero(j - 1 - r) * hb[r];
        }
        hb[j] = acc;
      }
    }
    return out;
  }

  // Chat_n(z; m) from the h_hat expansion.
  double right_pgf(int n, int m, double z, const std::array<std::vector<double>, 2>& hh) const {
    if (n == 0) return z;
    const double isolated = std::pow(qbar_, m);
    if (n == 1) return isolated * z + (1.0 - isolated) * z * z;
    double total = all_zero_given(1, m) * z;
    double zi = z;
    for (int i = 2; i <= n; ++i) {
      zi *= z;
      double coeff = ((i - 1) % 2 == 0 ? 1.0 : -1.0) * all_zero_given(i, m);
      for (int j = 1; j <= i; ++j) coeff += ((i - j) % 2 == 0 ? 1.0 : -1.0) * hh[0][j] * all_zero_given(i - j, m);
      total += zi * coeff;
    }
    double full = 0.0;
    for (int j = 0; j <= n; ++j) full += ((n - j) % 2 == 0 ? 1.0 : -1.0) * hh[1][j] * all_zero_given(n - j, m);
    return total + zi * z * full;
  }

  // E[C_{n,1}], the mean of the component of an end node.
  double end_cluster_mean(int n, const std::array<std::vector<double>, 2>& hh) const {
    if (n == 0) return 1.0;
    double total = all_zero(1);
    for (int i = 2; i <= n; ++i) {
      double coeff = ((i - 1) % 2 == 0 ? 1.0 : -1.0) * all_zero(i);
      for (int j = 1; j <= i; ++j) coeff += ((i - j) % 2 == 0 ? 1.0 : -1.0) * hh[0][j] * all_zero(i - j);
      total += i * coeff;
    }
    double full = 0.0;
    for (int j = 0; j <= n; ++j) full += ((n - j) % 2 == 0 ? 1.0 : -1.0) * hh[1][j] * all_zero(n - j);
    return total + (n + 1) * full;
  }

 private:
  double q_;
  double qbar_;
  int M_;
  PolyPTable table_;
  std::vector<double> empty_pow_;
};

void check_config(const LinkConfiguration& x, const LineSpec& spec) {
  spec.validate();
  if (static_cast<int>(x.size()) != spec.n) {
    throw ValidationError("configuration has " + std::to_string(x.size()) + " links, line has " +
                          std::to_string(spec.n));
  }
}

void check_layers(int m, int M) {
  if (m < 0 || m > M) throw ValidationError("layer count m must lie in [0, M]");
}

// (1 - x_l) - x_l for 1-based link l.
double flip(const LinkConfiguration& x, int l) { return x[static_cast<LinkId>(l - 1)] ? -1.0 : 1.0; }

bool all_active(const LinkConfiguration& x, int upto) {
  for (int l = 0; l < upto; ++l) {
    if (!x[static_cast<LinkId>(l)]) return false;
  }
  return true;
}

std::vector<double> compute_h(const LinkConfiguration& x, const LineTables& tables) {
  const int n = static_cast<int>(x.size());
  std::vector<double> h(static_cast<std::size_t>(n) + 1, 0.0);
  h[0] = 1.0;
  for (int j = 1; j <= n; ++j) {
    if (!x[static_cast<LinkId>(j - 1)]) continue;
    double acc = 0.0;
    double sign = 1.0;  // prod_{l=r+1}^{j-1} flip(l)
    for (int r = j - 1; r >= 0; --r) {
      acc += tables.all_zero(j - 1 - r) * h[r] * sign;
      if (r >= 1) sign *= flip(x, r);
    }
    h[j] = acc;
  }
  return h;
}

}  // namespace

double q_all_zero_given_m(int n, int m, const LineSpec& spec) {
  if (n < 0) throw ValidationError("n must be non-negative");
  if (!(spec.q > 0.0 && spec.q <= 1.0) || spec.M < 1) spec.validate();
  check_layers(m, spec.M);
  if (n == 0) return 1.0;
  if (spec.q == 1.0) return m == 0 && n == 1 ? 1.0 : 0.0;
  return LineTables(spec, n).all_zero_given(n, m);
}

double q_all_zero(int n, const LineSpec& spec) {
  if (n < 0) throw ValidationError("n must be non-negative");
  if (!(spec.q > 0.0 && spec.q <= 1.0) || spec.M < 1) spec.validate();
  if (n == 0) return 1.0;
  if (spec.q == 1.0) return 0.0;
  return LineTables(spec, n).all_zero(n);
}

HCoefficients h_coefficients(const LinkConfiguration& x, const LineSpec& spec) {
  check_config(x, spec);
  const LineTables tables(spec, spec.n);
  return HCoefficients{compute_h(x, tables), tables.h_hat(spec.n)};
}

double config_prob_given_m(const LinkConfiguration& x, int m, const LineSpec& spec) {
  check_config(x, spec);
  check_layers(m, spec.M);
  if (spec.q == 1.0) {
    // Every other node is in all layers: only the last link depends on m.
    return all_active(x, spec.n - 1) && x[static_cast<LinkId>(spec.n - 1)] == (m >= 1) ? 1.0 : 0.0;
  }
  const LineTables tables(spec, spec.n);
  const auto h = compute_h(x, tables);
  double total = 0.0;
  double sign = 1.0;  // prod_{l=j+1}^{n} flip(l)
  for (int j = spec.n; j >= 0; --j) {
    total += h[j] * tables.all_zero_given(spec.n - j, m) * sign;
    if (j >= 1) sign *= flip(x, j);
  }
  return total;
}

double config_prob(const LinkConfiguration& x, const LineSpec& spec) {
  check_config(x, spec);
  if (spec.q == 1.0) return all_active(x, spec.n) ? 1.0 : 0.0;
  const LineTables tables(spec, spec.n);
  const auto h = compute_h(x, tables);
  double total = 0.0;
  double sign = 1.0;
  for (int j = spec.n; j >= 0; --j) {
    total += h[j] * tables.all_zero(spec.n - j) * sign;
    if (j >= 1) sign *= flip(x, j);
  }
  return total;
}

double cluster_pgf_right(int n, int m, double z, const LineSpec& spec) {
  if (n < 0) throw ValidationError("n must be non-negative");
  if (!(spec.q > 0.0 && spec.q <= 1.0) || spec.M < 1) spec.validate();
  check_layers(m, spec.M);
  if (spec.q == 1.0) return m >= 1 || n == 0 ? std::pow(z, n + 1) : z;
  const LineTables tables(spec, std::max(n, 1));
  return tables.right_pgf(n, m, z, tables.h_hat(n));
}

double cluster_pgf(int n, int i, double z, const LineSpec& spec) {
  if (n < 0 || i < 1 || i > n + 1) throw ValidationError("node index must lie in [1, n+1]");
  if (z == 0.0) throw ValidationError("cluster pgf is evaluated through 1/z; z must be non-zero");
  if (!(spec.q > 0.0 && spec.q <= 1.0) || spec.M < 1) spec.validate();
  if (spec.q == 1.0) return std::pow(z, n + 1);
  const int left = i - 1;
  const int right = n - i + 1;
  const LineTables tables(spec, std::max({left, right, 1}));
  const auto hh = tables.h_hat(std::max(left, right));
  const auto weights = binom_pmf_table(spec.M, spec.q);
  double total = 0.0;
  for (int m = 0; m <= spec.M; ++m) {
    total += weights[m] * tables.right_pgf(left, m, z, hh) * tables.right_pgf(right, m, z, hh);
  }
  return total / z;
}

double expected_cluster_size(int n, int i, const LineSpec& spec) {
  if (n < 0 || i < 1 || i > n + 1) throw ValidationError("node index must lie in [1, n+1]");
  if (!(spec.q > 0.0 && spec.q <= 1.0) || spec.M < 1) spec.validate();
  if (spec.q == 1.0) return n + 1.0;
  const int left = i - 1;
  const int right = n - i + 1;
  const LineTables tables(spec, std::max({left, right, 1}));
  const auto hh = tables.h_hat(std::max(left, right));
  return tables.end_cluster_mean(left, hh) + tables.end_cluster_mean(right, hh) - 1.0;
}

double apply_f(std::span<const double> f, int m, double q) {
  const int M = static_cast<int>(f.size()) - 1;
  check_layers(m, M);
  const auto w = binom_pmf_table(M - m, q);
  double total = 0.0;
  for (int i = 0; i <= M - m; ++i) total += w[i] * f[i];
  return total;
}

double apply_g(std::span<const double> f, int m, double q) {
  const int M = static_cast<int>(f.size()) - 1;
  check_layers(m, M);
  const auto outer = binom_pmf_table(M - m, q);
  const auto inner = binom_pmf_table(m, q);
  double total = 0.0;
  for (int i = 0; i <= M - m; ++i) {
    double acc = 0.0;
    for (int j = 1; j <= m; ++j) acc += inner[j] * f[i + j];
    total += outer[i] * acc;
  }
  return total;
}

double active_links_pgf(int n, double z, const LineSpec& spec) {
  if (n < 1) throw ValidationError("line needs at least one link");
  if (!(spec.q > 0.0 && spec.q <= 1.0) || spec.M < 1) spec.validate();
  if (spec.q == 1.0) return std::pow(z, n);
  const int M = spec.M;
  const double qbar = 1.0 - spec.q;
  const auto weights = binom_pmf_table(M, spec.q);

  std::vector<double> level(static_cast<std::size_t>(M) + 1);
  for (int m = 0; m <= M; ++m) {
    const double isolated = std::pow(qbar, m);
    level[m] = isolated + z * (1.0 - isolated);
  }
  // Rows B(.; M-m, q) are reused at every level.
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(M) + 1);
  for (int m = 0; m <= M; ++m) rows[m] = binom_pmf_table(M - m, spec.q);

  std::vector<double> next(level.size());
  for (int k = 2; k <= n; ++k) {
    double mixed = 0.0;  // sum_t B(t; M, q) L_{k-1}^{(t)}
    for (int t = 0; t <= M; ++t) mixed += weights[t] * level[t];
    for (int m = 0; m <= M; ++m) {
      double f_term = 0.0;
      for (int i = 0; i <= M - m; ++i) f_term += rows[m][i] * level[i];
      const double lead = std::pow(qbar, m) * f_term;
      // G(f, m) = sum_t B(t; M, q) f(t) - qbar^m F(f, m): binomial convolution.
      next[m] = lead + z * (mixed - lead);
    }
    level.swap(next);
  }
  double total = 0.0;
  for (int m = 0; m <= M; ++m) total += weights[m] * level[m];
  return total;
}

double expected_active_links(int n, const LineSpec& spec) {
  if (n < 1) throw ValidationError("line needs at least one link");
  if (!(spec.q > 0.0 && spec.q <= 1.0) || spec.M < 1) spec.validate();
  return -n * std::expm1(spec.M * std::log1p(-spec.q * spec.q));
}

}  // namespace mlnet::line
