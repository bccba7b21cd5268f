#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "treekta/dataset.hpp"
#include "treekta/random.hpp"

namespace treekta {

/// How a node chooses its split.
enum class SplitRule {
  /// Reduction in sum of squared deviations; leaf value is the node mean.
  variance,
  /// Newton-step gain for squared loss with unit hessians and L2 leaf penalty:
  /// gain = 1/2 [S_L^2/(n_L+lambda) + S_R^2/(n_R+lambda) - S^2/(n+lambda)],
  /// leaf value S/(n+lambda) where S sums the (residual) targets.
  second_order,
};

struct TreeConfig {
  /// 0 means unlimited.
  int max_depth = 0;
  /// Nodes holding this many samples or fewer are not split.
  std::size_t min_node_size = 5;
  /// Candidate features drawn (without replacement) at every node.
  std::size_t mtry = 1;
  /// A split is kept only if its gain is strictly above this value.
  double min_split_gain = 0.0;
  SplitRule rule = SplitRule::variance;
  /// L2 leaf penalty, second_order rule only.
  double reg_lambda = 0.0;

  /// Regression forest defaults for p features: mtry = floor(sqrt(p)),
  /// min_node_size = 5, unlimited depth.
  static TreeConfig random_forest(std::size_t p);

  void validate(std::size_t p) const;

  friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

/// One node of a fitted tree. Internal nodes carry feature/threshold/children,
/// terminal nodes carry leaf_id/value; the unused fields stay at -1.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::int32_t leaf_id = -1;
  double value = 0.0;

  bool is_leaf() const { return leaf_id >= 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Immutable binary regression tree stored as a flat node list (root first).
/// Leaf ids are contiguous in 0..leaf_count()-1.
class Tree {
 public:
  Tree() = default;
  /// Validates structure: child references in range, every node reachable
  /// once, leaf ids distinct and contiguous.
  Tree(std::vector<TreeNode> nodes, std::size_t n_features);

  /// Terminal leaf reached by x; ties at a threshold go left.
  std::size_t leaf_of(std::span<const double> x) const;
  double predict(std::span<const double> x) const { return leaf_value(leaf_of(x)); }
  double leaf_value(std::size_t leaf_id) const { return leaf_values_[leaf_id]; }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t leaf_count() const { return leaf_values_.size(); }
  std::size_t n_features() const { return n_features_; }
  int depth() const;

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.n_features_ == b.n_features_ && a.nodes_ == b.nodes_;
  }

 private:
  std::vector<TreeNode> nodes_;
  std::vector<double> leaf_values_;
  std::size_t n_features_ = 0;
};

/// Grows a tree on the rows listed in sample_indices (duplicates allowed, as
/// produced by bootstrapping). When target_override is given it replaces
/// data.y and must have length data.n().
Tree fit_tree(const Dataset& data, std::span<const std::size_t> sample_indices,
              const TreeConfig& config, std::optional<std::span<const double>> target_override,
              Rng& rng);

inline std::size_t leaf_of(const Tree& tree, std::span<const double> x) { return tree.leaf_of(x); }
inline double predict_tree(const Tree& tree, std::span<const double> x) { return tree.predict(x); }

}  // namespace treekta
