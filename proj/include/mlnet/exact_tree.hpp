#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "mlnet/model.hpp"
#include "mlnet/pmf.hpp"

// Bottom-up dynamic program for configuration probabilities on trees with
// arbitrary p, q and K (i.i.d. layers).
//
// For every node v and m = 0..M the program keeps
//   f_v(m) = P[A_v = m, links of the subtree T_v match x],
// A_v being the number of layers v is active in. A child w hangs off v with
//   g_vw(m) = sum_k f_w(k) sum_j H(j; M, m, k) P[X_vw = x_vw | A_vw = j]
// where A_vw, the number of layers shared by v and w, is hypergeometric and
// W_vw | A_vw = j is Binomial(j, p_vw).
namespace mlnet::tree {

class RootedTree {
 public:
  // Throws ValidationError unless g is a tree and root is one of its nodes.
  RootedTree(BaseGraph g, NodeId root = 0);

  const BaseGraph& base() const { return base_; }
  NodeId root() const { return root_; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  LinkId parent_link(NodeId v) const { return parent_link_[v]; }
  const std::vector<NodeId>& children(NodeId v) const { return children_[v]; }
  // Every node after all of its descendants; the root comes last.
  const std::vector<NodeId>& leaves_first() const { return order_; }

 private:
  BaseGraph base_;
  NodeId root_;
  std::vector<NodeId> parent_;
  std::vector<LinkId> parent_link_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> order_;
};

// f_v(0..M) for one node.
struct NodeLayerDist {
  std::vector<double> values;
};

// g_vw(m) evaluated straight from the double sum over (k, j), with p_vw the
// survival probability of link (v, w). Reference path, O(M^2) per call.
double edge_factor(int m, const NodeLayerDist& child, bool x_vw, double p_vw, int M, int K);

/**
 * Reusable solver for one tree and parameter set.
 *
 * Construction caches, per distinct (p_vw, q_v, q_w), the kernels
 *   T_x(m, k) = sum_j H(j; M, m, k) P[X_vw = x | A_vw = j]
 * restricted to the layer counts where B(m; M, q) is not negligible, so each
 * configuration then costs O(sum over links of window_v * window_w).
 */
class TreeDp {
 public:
  TreeDp(RootedTree tree, ModelParams params);

  const RootedTree& tree() const { return tree_; }
  const ModelParams& params() const { return params_; }

  double config_prob(const LinkConfiguration& x) const;

  // f_v for every node v under configuration x.
  std::vector<NodeLayerDist> layer_dists(const LinkConfiguration& x) const;

 private:
  struct Window {
    int lo = 0;
    int hi = -1;
    int width() const { return hi - lo + 1; }
  };
  struct Kernel {
    Window parent;
    Window child;
    std::vector<double> active;    // T_1, row-major parent x child
    std::vector<double> inactive;  // T_0
  };

  std::vector<std::vector<double>> windowed_dists(const LinkConfiguration& x) const;
  std::shared_ptr<const Kernel> build_kernel(double p, Window parent, Window child) const;

  RootedTree tree_;
  ModelParams params_;
  LogFactorial log_factorial_;
  std::vector<Window> windows_;
  std::vector<std::vector<double>> node_weights_;        // B(m; M, q_v) over the window
  std::vector<std::shared_ptr<const Kernel>> kernels_;   // by child node
};

double tree_config_prob(const RootedTree& t, const LinkConfiguration& x, const ModelParams& params);

}  // namespace mlnet::tree
