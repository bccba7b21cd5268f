#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "treekta/dataset.hpp"
#include "treekta/random.hpp"

namespace treekta {

/// A column named by its header label or by 0-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

enum class NaPolicy { drop_row, error };

/// How to read one CSV file. Missing cells are empty, "NA", "NaN" or "?".
struct DatasetSchema {
  /// Defaults to the last column.
  std::optional<ColumnRef> target;
  /// Defaults to every column except the target.
  std::optional<std::vector<ColumnRef>> features;
  char delimiter = ',';
  bool has_header = true;
  NaPolicy na_policy = NaPolicy::error;
};

/// Sidecar format:
///   {"target": "medv" | 13, "features": "all" | ["crim", 2, ...],
///    "delimiter": ",", "has_header": true, "na_policy": "drop_row" | "error"}
/// Every key is optional.
DatasetSchema schema_from_json(const nlohmann::json& doc);
nlohmann::json schema_to_json(const DatasetSchema& schema);
DatasetSchema load_schema(const std::filesystem::path& path);

/// Errors name the 1-based file line and column of the offending cell.
Dataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema = {});

/// Header row of feature names (x1..xp when unnamed) then `target_name`;
/// values printed with 17 significant digits.
void write_csv(const std::filesystem::path& path, const Dataset& data,
               const std::string& target_name = "y");

/// n_sub distinct rows drawn uniformly without replacement, in draw order.
Dataset subsample(const Dataset& data, std::size_t n_sub, Rng& rng);

}  // namespace treekta
