#include "mlnet/exact_tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlnet/errors.hpp"

namespace mlnet::tree {

namespace {

// Layer counts with B(m; M, q) below this are dropped; their total mass is
// at most (M + 1) * kNegligible.
constexpr double kNegligible = 1e-40;

}  // namespace

RootedTree::RootedTree(BaseGraph g, NodeId root)
    : base_(std::move(g)), root_(root) {
  if (!base_.is_tree()) throw ValidationError("base graph is not a tree");
  if (root_ >= base_.num_nodes()) throw ValidationError("root " + std::to_string(root_) + " is not a node");
  const std::size_t n = base_.num_nodes();
  parent_.assign(n, root_);
  parent_link_.assign(n, 0);
  children_.assign(n, {});
  order_.reserve(n);

  // Iterative DFS; reversing the preorder puts every node after its children.
  std::vector<NodeId> stack{root_};
  std::vector<bool> seen(n, false);
  seen[root_] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    order_.push_back(v);
    for (const auto& inc : base_.incident(v)) {
      if (seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      parent_[inc.neighbor] = v;
      parent_link_[inc.neighbor] = inc.link;
      children_[v].push_back(inc.neighbor);
      stack.push_back(inc.neighbor);
    }
  }
  std::reverse(order_.begin(), order_.end());
}

double edge_factor(int m, const NodeLayerDist& child, bool x_vw, double p_vw, int M, int K) {
  if (m < 0 || m > M) throw ValidationError("layer count m must lie in [0, M]");
  if (static_cast<int>(child.values.size()) != M + 1) throw ValidationError("child distribution must hold M+1 values");
  double total = 0.0;
  for (int k = 0; k <= M; ++k) {
    if (child.values[k] == 0.0) continue;
    double inner = 0.0;
    for (int j = std::max(0, m + k - M); j <= std::min(m, k); ++j) {
      const double active = binom_ccdf(K, j, p_vw);
      inner += hypergeom_pmf(j, M, m, k) * (x_vw ? active : 1.0 - active);
    }
    total += child.values[k] * inner;
  }
  return total;
}

TreeDp::TreeDp(RootedTree tree, ModelParams params)
    : tree_(std::move(tree)), params_(std::move(params)), log_factorial_(params_.M) {
  validate_model(tree_.base(), params_).throw_if_invalid();
  const int M = params_.M;
  const std::size_t n = tree_.base().num_nodes();

  windows_.resize(n);
  node_weights_.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    const auto weights = binom_pmf_table(M, params_.q[v]);
    Window w;
    w.lo = 0;
    while (w.lo < M && weights[w.lo] < kNegligible) ++w.lo;
    w.hi = M;
    while (w.hi > w.lo && weights[w.hi] < kNegligible) --w.hi;
    windows_[v] = w;
    node_weights_[v].assign(weights.begin() + w.lo, weights.begin() + w.hi + 1);
  }

  std::map<std::tuple<double, double, double>, std::shared_ptr<const Kernel>> cache;
  kernels_.resize(n);
  for (NodeId w = 0; w < n; ++w) {
    if (w == tree_.root()) continue;
    const NodeId v = tree_.parent(w);
    const double p = params_.p[tree_.parent_link(w)];
    const auto key = std::make_tuple(p, params_.q[v], params_.q[w]);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_kernel(p, windows_[v], windows_[w])).first;
    kernels_[w] = it->second;
  }
}

std::shared_ptr<const TreeDp::Kernel> TreeDp::build_kernel(double p, Window parent, Window child) const {
  const int M = params_.M;
  const int K = params_.K;
  // P[W >= K | A_vw = j] and its complement; the shorter side is summed.
  std::vector<double> active(static_cast<std::size_t>(M) + 1);
  std::vector<double> inactive(static_cast<std::size_t>(M) + 1);
  for (int j = 0; j <= M; ++j) {
    if (p >= 1.0 || j < K) {
      active[j] = j >= K ? 1.0 : 0.0;
    } else if (K <= j - K) {
      double head = 0.0;
      for (int l = 0; l < K; ++l) head += binom_pmf(l, j, p);
      active[j] = 1.0 - head;
      inactive[j] = head;
      continue;
    } else {
      double tail = 0.0;
      for (int l = K; l <= j; ++l) tail += binom_pmf(l, j, p);
      active[j] = tail;
    }
    inactive[j] = 1.0 - active[j];
  }

  auto kernel = std::make_shared<Kernel>();
  kernel->parent = parent;
  kernel->child = child;
  const std::size_t size = static_cast<std::size_t>(parent.width()) * static_cast<std::size_t>(child.width());
  kernel->active.assign(size, 0.0);
  kernel->inactive.assign(size, 0.0);

  for (int m = parent.lo; m <= parent.hi; ++m) {
    for (int k = child.lo; k <= child.hi; ++k) {
      const int jlo = std::max(0, m + k - M);
      const int jhi = std::min(m, k);
      // Walk outward from the mode with the pmf ratio; stop once terms are
      // negligible (the hypergeometric pmf is unimodal). The row is then
      // normalized by its own mass, which cancels the anchor's rounding.
      const int mode = std::clamp(static_cast<int>((static_cast<long long>(m + 1) * (k + 1)) / (M + 2)), jlo, jhi);
      const double at_mode = hypergeom_pmf(mode, M, m, k, log_factorial_);
      double sum1 = at_mode * active[mode];
      double sum0 = at_mode * inactive[mode];
      double mass = at_mode;
      double h = at_mode;
      for (int j = mode; j < jhi && h > kNegligible; ++j) {
        h *= static_cast<double>(m - j) * (k - j) / (static_cast<double>(j + 1) * (M - m - k + j + 1));
        sum1 += h * active[j + 1];
        sum0 += h * inactive[j + 1];
        mass += h;
      }
      h = at_mode;
      for (int j = mode; j > jlo && h > kNegligible; --j) {
        h *= static_cast<double>(j) * (M - m - k + j) / (static_cast<double>(m - j + 1) * (k - j + 1));
        sum1 += h * active[j - 1];
        sum0 += h * inactive[j - 1];
        mass += h;
      }
      const std::size_t idx = static_cast<std::size_t>(m - parent.lo) * child.width() + (k - child.lo);
      kernel->active[idx] = sum1 / mass;
      kernel->inactive[idx] = sum0 / mass;
    }
  }
  return kernel;
}

std::vector<std::vector<double>> TreeDp::windowed_dists(const LinkConfiguration& x) const {
  const auto& g = tree_.base();
  if (x.size() != g.num_links()) {
    throw ValidationError("configuration has " + std::to_string(x.size()) + " links, tree has " +
                          std::to_string(g.num_links()));
  }
  // f over each node's window.
  std::vector<std::vector<double>> f(g.num_nodes());
  for (const NodeId v : tree_.leaves_first()) {
    const Window wv = windows_[v];
    std::vector<double> fv = node_weights_[v];
    for (const NodeId w : tree_.children(v)) {
      const Kernel& kernel = *kernels_[w];
      const auto& table = x[tree_.parent_link(w)] ? kernel.active : kernel.inactive;
      const auto& fw = f[w];
      const int cw = kernel.child.width();
      for (int m = 0; m < wv.width(); ++m) {
        if (fv[m] == 0.0) continue;
        const double* row = table.data() + static_cast<std::size_t>(m) * cw;
        double g_vw = 0.0;
        for (int k = 0; k < cw; ++k) g_vw += fw[k] * row[k];
        fv[m] *= g_vw;
      }
    }
    f[v] = std::move(fv);
  }
  return f;
}

std::vector<NodeLayerDist> TreeDp::layer_dists(const LinkConfiguration& x) const {
  const auto& g = tree_.base();
  const int M = params_.M;
  const auto f = windowed_dists(x);
  std::vector<NodeLayerDist> out(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    out[v].values.assign(static_cast<std::size_t>(M) + 1, 0.0);
    std::copy(f[v].begin(), f[v].end(), out[v].values.begin() + windows_[v].lo);
  }
  return out;
}

double TreeDp::config_prob(const LinkConfiguration& x) const {
  const auto f = windowed_dists(x);
  double total = 0.0;
  for (double value : f[tree_.root()]) total += value;
  return total;
}

double tree_config_prob(const RootedTree& t, const LinkConfiguration& x, const ModelParams& params) {
  return TreeDp(t, params).config_prob(x);
}

}  // namespace mlnet::tree
