#include "treekta/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "treekta/error.hpp"

namespace treekta {

TreeConfig TreeConfig::random_forest(std::size_t p) {
  TreeConfig config;
  config.mtry = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(p)))));
  config.min_node_size = 5;
  config.max_depth = 0;
  return config;
}

void TreeConfig::validate(std::size_t p) const {
  if (p == 0) throw InvalidArgument("no features");
  if (mtry < 1 || mtry > p)
    throw InvalidArgument("mtry must lie in [1, p]; got " + std::to_string(mtry) + " with p = " +
                          std::to_string(p));
  if (min_node_size < 1) throw InvalidArgument("min_node_size must be at least 1");
  if (max_depth < 0) throw InvalidArgument("max_depth must be non-negative (0 = unlimited)");
  if (!(min_split_gain >= 0.0)) throw InvalidArgument("min_split_gain must be non-negative");
  if (!(reg_lambda >= 0.0)) throw InvalidArgument("reg_lambda must be non-negative");
}

Tree::Tree(std::vector<TreeNode> nodes, std::size_t n_features)
    : nodes_(std::move(nodes)), n_features_(n_features) {
  if (nodes_.empty()) throw DataError("tree has no nodes");
  const auto count = static_cast<std::int32_t>(nodes_.size());
  std::vector<int> parents(nodes_.size(), 0);
  std::size_t leaves = 0;
  for (std::int32_t i = 0; i < count; ++i) {
    const TreeNode& node = nodes_[i];
    if (node.is_leaf()) {
      if (node.feature != -1 || node.left != -1 || node.right != -1)
        throw DataError("node " + std::to_string(i) + " is both terminal and internal");
      ++leaves;
      continue;
    }
    if (node.feature < 0 || static_cast<std::size_t>(node.feature) >= n_features_)
      throw DataError("node " + std::to_string(i) + " splits on an unknown feature");
    for (std::int32_t child : {node.left, node.right}) {
      if (child <= i || child >= count)
        throw DataError("node " + std::to_string(i) + " has an invalid child reference");
      ++parents[child];
    }
  }
  if (parents[0] != 0) throw DataError("root node has a parent");
  for (std::size_t i = 1; i < parents.size(); ++i)
    if (parents[i] != 1) throw DataError("node " + std::to_string(i) + " is not reached exactly once");

  leaf_values_.assign(leaves, 0.0);
  std::vector<bool> seen(leaves, false);
  for (const TreeNode& node : nodes_) {
    if (!node.is_leaf()) continue;
    const auto id = static_cast<std::size_t>(node.leaf_id);
    if (id >= leaves || seen[id]) throw DataError("leaf ids are not distinct and contiguous");
    seen[id] = true;
    leaf_values_[id] = node.value;
  }
}

std::size_t Tree::leaf_of(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                              : node.right);
  }
  return static_cast<std::size_t>(nodes_[i].leaf_id);
}

int Tree::depth() const {
  std::vector<int> level(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (!nodes_[i].is_leaf()) {
      level[static_cast<std::size_t>(nodes_[i].left)] = level[i] + 1;
      level[static_cast<std::size_t>(nodes_[i].right)] = level[i] + 1;
    }
  }
  return deepest;
}

namespace {

struct Split {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
  std::size_t left_count = 0;
};

// Growth works on "slots": slot k stands for row sample_indices[k], so
// bootstrap duplicates are separate slots. Every feature keeps its slots
// presorted by value; a node owns the same [begin, end) segment in all of
// them, and a split stable-partitions each segment.
class TreeGrower {
 public:
  TreeGrower(const Dataset& data, std::span<const std::size_t> samples, const TreeConfig& config,
             std::span<const double> target, Rng& rng)
      : x_(data.x), config_(config), rng_(rng), p_(data.p()) {
    const std::size_t s = samples.size();
    rows_.assign(samples.begin(), samples.end());
    target_.resize(s);
    for (std::size_t k = 0; k < s; ++k) target_[k] = target[rows_[k]];

    order_.resize(p_);
    for (std::size_t f = 0; f < p_; ++f) {
      auto& order = order_[f];
      order.resize(s);
      std::iota(order.begin(), order.end(), std::uint32_t{0});
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double va = value(a, f);
        const double vb = value(b, f);
        return va < vb || (va == vb && a < b);
      });
    }
    goes_left_.assign(s, 0);
    scratch_.resize(s);
    feature_pool_.resize(p_);
    std::iota(feature_pool_.begin(), feature_pool_.end(), std::size_t{0});
  }

  Tree grow() {
    build(0, rows_.size(), 0);
    return Tree(std::move(nodes_), p_);
  }

 private:
  double value(std::uint32_t slot, std::size_t f) const { return x_(rows_[slot], f); }

  std::int32_t build(std::size_t begin, std::size_t end, int depth) {
    const std::size_t count = end - begin;
    const auto& any_order = order_[0];
    double sum = 0.0;
    double lo = target_[any_order[begin]];
    double hi = lo;
    for (std::size_t k = begin; k < end; ++k) {
      const double t = target_[any_order[k]];
      sum += t;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    const bool pure = lo == hi;

    const bool terminal = count <= config_.min_node_size ||
                          (config_.max_depth > 0 && depth >= config_.max_depth) || pure;
    Split split;
    if (!terminal) split = best_split(begin, end, sum);
    if (!split.found) return make_leaf(count, sum, pure ? lo : 0.0, pure);

    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    partition(begin, end, split);
    const std::int32_t left = build(begin, begin + split.left_count, depth + 1);
    const std::int32_t right = build(begin + split.left_count, end, depth + 1);
    TreeNode& node = nodes_[static_cast<std::size_t>(index)];
    node.feature = static_cast<std::int32_t>(split.feature);
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    return index;
  }

  std::int32_t make_leaf(std::size_t count, double sum, double pure_value, bool pure) {
    TreeNode leaf;
    leaf.leaf_id = next_leaf_++;
    if (config_.rule == SplitRule::variance) {
      leaf.value = pure ? pure_value : sum / static_cast<double>(count);
    } else {
      leaf.value = sum / (static_cast<double>(count) + config_.reg_lambda);
    }
    nodes_.push_back(leaf);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  double gain(double sum_left, double n_left, double sum_right, double n_right, double sum,
              double n) const {
    if (config_.rule == SplitRule::variance) {
      return sum_left * sum_left / n_left + sum_right * sum_right / n_right - sum * sum / n;
    }
    const double lambda = config_.reg_lambda;
    return 0.5 * (sum_left * sum_left / (n_left + lambda) +
                  sum_right * sum_right / (n_right + lambda) - sum * sum / (n + lambda));
  }

  Split best_split(std::size_t begin, std::size_t end, double sum) {
    std::size_t candidates = p_;
    if (config_.mtry < p_) {
      candidates = config_.mtry;
      for (std::size_t i = 0; i < candidates; ++i) {
        const std::size_t j = i + uniform_index(rng_, p_ - i);
        std::swap(feature_pool_[i], feature_pool_[j]);
      }
    } else {
      std::iota(feature_pool_.begin(), feature_pool_.end(), std::size_t{0});
    }

    Split best;
    best.gain = config_.min_split_gain;
    const auto n = static_cast<double>(end - begin);
    for (std::size_t c = 0; c < candidates; ++c) {
      const std::size_t f = feature_pool_[c];
      const auto& order = order_[f];
      double sum_left = 0.0;
      for (std::size_t k = begin; k + 1 < end; ++k) {
        sum_left += target_[order[k]];
        const double here = value(order[k], f);
        const double next = value(order[k + 1], f);
        if (!(next > here)) continue;
        const auto n_left = static_cast<double>(k + 1 - begin);
        const double g = gain(sum_left, n_left, sum - sum_left, n - n_left, sum, n);
        if (g > best.gain) {
          double threshold = here + 0.5 * (next - here);
          // Adjacent doubles: the midpoint can round up onto `next`.
          if (!(threshold < next)) threshold = here;
          best.found = true;
          best.feature = f;
          best.threshold = threshold;
          best.gain = g;
          best.left_count = k + 1 - begin;
        }
      }
    }
    return best;
  }

  void partition(std::size_t begin, std::size_t end, const Split& split) {
    const auto& split_order = order_[split.feature];
    for (std::size_t k = begin; k < end; ++k)
      goes_left_[split_order[k]] = (k - begin < split.left_count) ? 1 : 0;
    for (std::size_t f = 0; f < p_; ++f) {
      if (f == split.feature) continue;
      auto& order = order_[f];
      std::size_t left = begin;
      std::size_t right = 0;
      for (std::size_t k = begin; k < end; ++k) {
        const std::uint32_t slot = order[k];
        if (goes_left_[slot]) {
          order[left++] = slot;
        } else {
          scratch_[right++] = slot;
        }
      }
      std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(right),
                order.begin() + static_cast<std::ptrdiff_t>(left));
    }
  }

  const Matrix& x_;
  const TreeConfig& config_;
  Rng& rng_;
  std::size_t p_;
  std::vector<std::size_t> rows_;
  std::vector<double> target_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<char> goes_left_;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::size_t> feature_pool_;
  std::vector<TreeNode> nodes_;
  std::int32_t next_leaf_ = 0;
};

}  // namespace

Tree fit_tree(const Dataset& data, std::span<const std::size_t> sample_indices,
              const TreeConfig& config, std::optional<std::span<const double>> target_override,
              Rng& rng) {
  if (sample_indices.empty()) throw InvalidArgument("empty node");
  if (data.p() == 0) throw InvalidArgument("no features");
  config.validate(data.p());
  std::span<const double> target = data.y;
  if (target_override) {
    if (target_override->size() != data.n())
      throw InvalidArgument("target override length differs from the number of rows");
    target = *target_override;
  }
  for (std::size_t row : sample_indices)
    if (row >= data.n()) throw InvalidArgument("sample index out of range");
  if (sample_indices.size() > std::numeric_limits<std::uint32_t>::max())
    throw InvalidArgument("too many samples for one tree");
  return TreeGrower(data, sample_indices, config, target, rng).grow();
}

}  // namespace treekta
