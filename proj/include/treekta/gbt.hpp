#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "treekta/dataset.hpp"
#include "treekta/tree.hpp"

namespace treekta {

/// Boosting hyperparameters. Defaults follow the usual xgboost regression
/// defaults (eta 0.3, depth 6, lambda 1, gamma 0, no subsampling).
struct GbtParams {
  double learning_rate = 0.3;
  int max_depth = 6;
  double reg_lambda = 1.0;
  double reg_gamma = 0.0;
  /// Leaves need at least one sample (unit hessians, min_child_weight 1).
  std::size_t min_node_size = 1;
  /// Row fraction drawn without replacement per round.
  double subsample = 1.0;
  /// Column fraction offered to every split.
  double colsample = 1.0;

  void validate() const;
  friend bool operator==(const GbtParams&, const GbtParams&) = default;
};

/// Squared-error boosted ensemble. Tree leaves hold the raw Newton weights w;
/// the prediction is base_score + learning_rate * sum of the reached weights.
struct GbtModel {
  std::vector<Tree> trees;
  GbtParams params;
  double base_score = 0.0;
  std::uint64_t master_seed = 0;

  std::size_t size() const { return trees.size(); }
  std::size_t n_features() const { return trees.empty() ? 0 : trees.front().n_features(); }

  friend bool operator==(const GbtModel&, const GbtModel&) = default;
};

GbtModel fit_gbt(const Dataset& data, std::size_t m_rounds, const GbtParams& params,
                 std::uint64_t master_seed);

double predict_gbt(const GbtModel& model, std::span<const double> x);
Vector predict_gbt(const GbtModel& model, const Dataset& data);

/// Training loss sum (y - yhat)^2 after each round, index 0 being the base score.
Vector gbt_training_loss_path(const GbtModel& model, const Dataset& data);

}  // namespace treekta
