#include "treekta/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treekta/error.hpp"
#include "treekta/random.hpp"
#include "treekta/stats.hpp"

namespace treekta {

void GbtParams::validate() const {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw InvalidArgument("learning_rate must lie in (0, 1]");
  if (max_depth < 0) throw InvalidArgument("max_depth must be non-negative (0 = unlimited)");
  if (!(reg_lambda >= 0.0)) throw InvalidArgument("reg_lambda must be non-negative");
  if (!(reg_gamma >= 0.0)) throw InvalidArgument("reg_gamma must be non-negative");
  if (min_node_size < 1) throw InvalidArgument("min_node_size must be at least 1");
  if (!(subsample > 0.0 && subsample <= 1.0)) throw InvalidArgument("subsample must lie in (0, 1]");
  if (!(colsample > 0.0 && colsample <= 1.0)) throw InvalidArgument("colsample must lie in (0, 1]");
}

GbtModel fit_gbt(const Dataset& data, std::size_t m_rounds, const GbtParams& params,
                 std::uint64_t master_seed) {
  if (data.n() < 2) throw DataError("insufficient data");
  if (m_rounds < 1) throw InvalidArgument("boosting needs at least one round");
  if (data.p() == 0) throw InvalidArgument("no features");
  params.validate();

  const std::size_t n = data.n();
  const std::size_t p = data.p();

  TreeConfig config;
  config.rule = SplitRule::second_order;
  config.max_depth = params.max_depth;
  config.min_node_size = params.min_node_size;
  config.reg_lambda = params.reg_lambda;
  config.min_split_gain = params.reg_gamma;
  config.mtry = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::floor(params.colsample * static_cast<double>(p))), 1, p);

  GbtModel model;
  model.params = params;
  model.master_seed = master_seed;
  model.base_score = mean(data.y);
  model.trees.reserve(m_rounds);

  Vector fitted(n, model.base_score);
  Vector residual(n);
  std::vector<std::size_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
  const auto rows_per_round = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(params.subsample * static_cast<double>(n))));

  for (std::size_t m = 0; m < m_rounds; ++m) {
    Rng rng(derive_seed(master_seed, m));
    // Negative gradient of 1/2 (y - yhat)^2; hessians are all 1.
    for (std::size_t i = 0; i < n; ++i) residual[i] = data.y[i] - fitted[i];
    std::vector<std::size_t> rows =
        rows_per_round < n ? sample_without_replacement(rng, n, rows_per_round) : all_rows;
    Tree tree = fit_tree(data, rows, config, std::span<const double>(residual), rng);
    for (std::size_t i = 0; i < n; ++i) fitted[i] += params.learning_rate * tree.predict(data.row(i));
    model.trees.push_back(std::move(tree));
  }
  return model;
}

double predict_gbt(const GbtModel& model, std::span<const double> x) {
  double sum = 0.0;
  for (const Tree& tree : model.trees) sum += tree.predict(x);
  return model.base_score + model.params.learning_rate * sum;
}

Vector predict_gbt(const GbtModel& model, const Dataset& data) {
  if (data.p() != model.n_features()) throw DataError("feature count differs from the model");
  Vector out(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) out[i] = predict_gbt(model, data.row(i));
  return out;
}

Vector gbt_training_loss_path(const GbtModel& model, const Dataset& data) {
  Vector fitted(data.n(), model.base_score);
  Vector path;
  path.reserve(model.trees.size() + 1);
  auto loss = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < data.n(); ++i) s += (data.y[i] - fitted[i]) * (data.y[i] - fitted[i]);
    return s;
  };
  path.push_back(loss());
  for (const Tree& tree : model.trees) {
    for (std::size_t i = 0; i < data.n(); ++i)
      fitted[i] += model.params.learning_rate * tree.predict(data.row(i));
    path.push_back(loss());
  }
  return path;
}

}  // namespace treekta
