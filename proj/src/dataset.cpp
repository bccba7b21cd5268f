#include "treekta/dataset.hpp"

#include <algorithm>
#include <utility>

#include "treekta/error.hpp"

namespace treekta {

Dataset::Dataset(Matrix features, Vector target, std::vector<std::string> names)
    : x(std::move(features)), y(std::move(target)), feature_names(std::move(names)) {
  if (x.rows() != y.size()) {
    throw DataError("dataset has " + std::to_string(x.rows()) + " feature rows but " +
                    std::to_string(y.size()) + " targets");
  }
  if (!feature_names.empty() && feature_names.size() != x.cols())
    throw DataError("feature name count differs from column count");
}

Dataset Dataset::select(std::span<const std::size_t> rows) const {
  Matrix sub(rows.size(), p());
  Vector target(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= n()) throw InvalidArgument("row index out of range");
    auto src = x.row(rows[k]);
    std::copy(src.begin(), src.end(), sub.row(k).begin());
    target[k] = y[rows[k]];
  }
  return Dataset(std::move(sub), std::move(target), feature_names);
}

}  // namespace treekta
