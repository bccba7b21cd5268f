#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "treekta/dataset.hpp"
#include "treekta/tree.hpp"

namespace treekta {

/// Bagged regression forest. Tree m was grown on a bootstrap resample drawn
/// from an RNG seeded with tree_seeds[m] = derive_seed(master_seed, m).
struct RandomForest {
  std::vector<Tree> trees;
  std::vector<std::uint64_t> tree_seeds;
  TreeConfig config;
  std::uint64_t master_seed = 0;

  std::size_t size() const { return trees.size(); }
  std::size_t n_features() const { return trees.empty() ? 0 : trees.front().n_features(); }

  friend bool operator==(const RandomForest&, const RandomForest&) = default;
};

/// Fits m_trees trees, each on n rows drawn with replacement. The result does
/// not depend on `threads`.
RandomForest fit_rf(const Dataset& data, std::size_t m_trees, const TreeConfig& config,
                    std::uint64_t master_seed, unsigned threads = 1);

/// Mean of the per-tree predictions.
double predict_rf(const RandomForest& forest, std::span<const double> x);
Vector predict_rf(const RandomForest& forest, const Dataset& data);

}  // namespace treekta
