#include "treekta/rf.hpp"

#include "treekta/error.hpp"
#include "treekta/parallel.hpp"

namespace treekta {

RandomForest fit_rf(const Dataset& data, std::size_t m_trees, const TreeConfig& config,
                    std::uint64_t master_seed, unsigned threads) {
  if (data.n() < 2) throw DataError("insufficient data");
  if (m_trees < 1) throw InvalidArgument("a forest needs at least one tree");
  config.validate(data.p());

  RandomForest forest;
  forest.config = config;
  forest.master_seed = master_seed;
  forest.trees.resize(m_trees);
  forest.tree_seeds.resize(m_trees);

  const std::size_t n = data.n();
  parallel_for(m_trees, threads, [&](std::size_t m) {
    const std::uint64_t seed = derive_seed(master_seed, m);
    Rng rng(seed);
    std::vector<std::size_t> bootstrap(n);
    for (auto& row : bootstrap) row = uniform_index(rng, n);
    forest.tree_seeds[m] = seed;
    forest.trees[m] = fit_tree(data, bootstrap, config, std::nullopt, rng);
  });
  return forest;
}

double predict_rf(const RandomForest& forest, std::span<const double> x) {
  double sum = 0.0;
  for (const Tree& tree : forest.trees) sum += tree.predict(x);
  return sum / static_cast<double>(forest.trees.size());
}

Vector predict_rf(const RandomForest& forest, const Dataset& data) {
  if (data.p() != forest.n_features()) throw DataError("feature count differs from the forest");
  Vector out(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) out[i] = predict_rf(forest, data.row(i));
  return out;
}

}  // namespace treekta
