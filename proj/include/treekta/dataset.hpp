#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "treekta/matrix.hpp"

namespace treekta {

/// Feature matrix (n x p) paired with a continuous target of length n.
struct Dataset {
  Matrix x;
  Vector y;
  std::vector<std::string> feature_names;

  Dataset() = default;
  Dataset(Matrix features, Vector target, std::vector<std::string> names = {});

  std::size_t n() const { return x.rows(); }
  std::size_t p() const { return x.cols(); }
  std::span<const double> row(std::size_t i) const { return x.row(i); }

  /// Copy of the given rows, in the given order.
  Dataset select(std::span<const std::size_t> rows) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

}  // namespace treekta
