#pragma once

#include <string>

#include "json.hpp"
#include "treekta/gbt.hpp"
#include "treekta/rf.hpp"
#include "treekta/tree.hpp"

namespace treekta {

// Documents hold node lists with explicit child indices:
//   {"n_features": p, "nodes": [{"feature": f, "threshold": t, "left": l, "right": r},
//                               {"leaf": id, "value": v}, ...]}
nlohmann::json tree_to_json(const Tree& tree);
Tree tree_from_json(const nlohmann::json& doc);

nlohmann::json tree_config_to_json(const TreeConfig& config);
TreeConfig tree_config_from_json(const nlohmann::json& doc);

nlohmann::json forest_to_json(const RandomForest& forest);
RandomForest forest_from_json(const nlohmann::json& doc);

nlohmann::json gbt_to_json(const GbtModel& model);
GbtModel gbt_from_json(const nlohmann::json& doc);

}  // namespace treekta
