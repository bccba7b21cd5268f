#include "treekta/serialize.hpp"

#include "treekta/error.hpp"

namespace treekta {

using nlohmann::json;

json tree_to_json(const Tree& tree) {
  json nodes = json::array();
  for (const TreeNode& node : tree.nodes()) {
    if (node.is_leaf()) {
      nodes.push_back({{"leaf", node.leaf_id}, {"value", node.value}});
    } else {
      nodes.push_back({{"feature", node.feature},
                       {"threshold", node.threshold},
                       {"left", node.left},
                       {"right", node.right}});
    }
  }
  return {{"n_features", tree.n_features()}, {"nodes", std::move(nodes)}};
}

Tree tree_from_json(const json& doc) {
  try {
    std::vector<TreeNode> nodes;
    for (const json& item : doc.at("nodes")) {
      TreeNode node;
      if (item.contains("leaf")) {
        node.leaf_id = item.at("leaf").get<std::int32_t>();
        node.value = item.at("value").get<double>();
        if (node.leaf_id < 0) throw DataError("negative leaf id");
      } else {
        node.feature = item.at("feature").get<std::int32_t>();
        node.threshold = item.at("threshold").get<double>();
        node.left = item.at("left").get<std::int32_t>();
        node.right = item.at("right").get<std::int32_t>();
      }
      nodes.push_back(node);
    }
    return Tree(std::move(nodes), doc.at("n_features").get<std::size_t>());
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed tree document: ") + e.what());
  }
}

json tree_config_to_json(const TreeConfig& config) {
  return {{"max_depth", config.max_depth},
          {"min_node_size", config.min_node_size},
          {"mtry", config.mtry},
          {"min_split_gain", config.min_split_gain},
          {"rule", config.rule == SplitRule::variance ? "variance" : "second_order"},
          {"reg_lambda", config.reg_lambda}};
}

TreeConfig tree_config_from_json(const json& doc) {
  try {
    TreeConfig config;
    config.max_depth = doc.at("max_depth").get<int>();
    config.min_node_size = doc.at("min_node_size").get<std::size_t>();
    config.mtry = doc.at("mtry").get<std::size_t>();
    config.min_split_gain = doc.at("min_split_gain").get<double>();
    const auto rule = doc.at("rule").get<std::string>();
    if (rule == "variance") {
      config.rule = SplitRule::variance;
    } else if (rule == "second_order") {
      config.rule = SplitRule::second_order;
    } else {
      throw DataError("unknown split rule '" + rule + "'");
    }
    config.reg_lambda = doc.at("reg_lambda").get<double>();
    return config;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed tree config: ") + e.what());
  }
}

json forest_to_json(const RandomForest& forest) {
  json trees = json::array();
  for (const Tree& tree : forest.trees) trees.push_back(tree_to_json(tree));
  return {{"kind", "random_forest"},
          {"master_seed", forest.master_seed},
          {"config", tree_config_to_json(forest.config)},
          {"tree_seeds", forest.tree_seeds},
          {"trees", std::move(trees)}};
}

RandomForest forest_from_json(const json& doc) {
  try {
    if (doc.at("kind") != "random_forest") throw DataError("document is not a random forest");
    RandomForest forest;
    forest.master_seed = doc.at("master_seed").get<std::uint64_t>();
    forest.config = tree_config_from_json(doc.at("config"));
    forest.tree_seeds = doc.at("tree_seeds").get<std::vector<std::uint64_t>>();
    for (const json& tree : doc.at("trees")) forest.trees.push_back(tree_from_json(tree));
    if (forest.trees.empty()) throw DataError("forest has no trees");
    if (forest.tree_seeds.size() != forest.trees.size())
      throw DataError("forest seed count differs from tree count");
    return forest;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed forest document: ") + e.what());
  }
}

json gbt_to_json(const GbtModel& model) {
  json trees = json::array();
  for (const Tree& tree : model.trees) trees.push_back(tree_to_json(tree));
  const GbtParams& p = model.params;
  return {{"kind", "gradient_boosting"},
          {"master_seed", model.master_seed},
          {"base_score", model.base_score},
          {"params",
           {{"learning_rate", p.learning_rate},
            {"max_depth", p.max_depth},
            {"reg_lambda", p.reg_lambda},
            {"reg_gamma", p.reg_gamma},
            {"min_node_size", p.min_node_size},
            {"subsample", p.subsample},
            {"colsample", p.colsample}}},
          {"trees", std::move(trees)}};
}

GbtModel gbt_from_json(const json& doc) {
  try {
    if (doc.at("kind") != "gradient_boosting") throw DataError("document is not a boosted model");
    GbtModel model;
    model.master_seed = doc.at("master_seed").get<std::uint64_t>();
    model.base_score = doc.at("base_score").get<double>();
    const json& p = doc.at("params");
    model.params.learning_rate = p.at("learning_rate").get<double>();
    model.params.max_depth = p.at("max_depth").get<int>();
    model.params.reg_lambda = p.at("reg_lambda").get<double>();
    model.params.reg_gamma = p.at("reg_gamma").get<double>();
    model.params.min_node_size = p.at("min_node_size").get<std::size_t>();
    model.params.subsample = p.at("subsample").get<double>();
    model.params.colsample = p.at("colsample").get<double>();
    model.params.validate();
    for (const json& tree : doc.at("trees")) model.trees.push_back(tree_from_json(tree));
    if (model.trees.empty()) throw DataError("boosted model has no trees");
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed boosted model document: ") + e.what());
  }
}

}  // namespace treekta
