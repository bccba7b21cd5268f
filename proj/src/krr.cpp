#include "treekta/krr.hpp"

#include <cmath>

#include "treekta/error.hpp"
#include "treekta/linalg.hpp"

namespace treekta {

std::pair<Vector, double> solve_with_ridge_grid(const Matrix& a, std::span<const double> b,
                                                bool try_zero_first) {
  for (double v : a.values())
    if (!std::isfinite(v)) throw NumericalError("kernel unusable: non-finite entries");
  for (double v : b)
    if (!std::isfinite(v)) throw NumericalError("kernel unusable: non-finite targets");
  if (try_zero_first) {
    try {
      return {solve_spd(a, 0.0, b), 0.0};
    } catch (const NotPositiveDefinite&) {
    }
  }
  for (double ridge : kRidgeGrid) {
    try {
      return {solve_spd(a, ridge, b), ridge};
    } catch (const NotPositiveDefinite&) {
    }
  }
  throw NumericalError("kernel unusable: no ridge in the grid gives a positive definite system");
}

KrrModel fit_krr(const Matrix& k, std::span<const double> y) {
  if (k.rows() != k.cols()) throw DataError("kernel matrix is not square");
  if (k.rows() != y.size()) throw DataError("kernel size differs from target length");
  auto [alpha, lambda] = solve_with_ridge_grid(k, y);
  return {std::move(alpha), lambda, Vector(y.begin(), y.end())};
}

Vector predict_krr(const KrrModel& model, const Matrix& cross) {
  if (cross.cols() != model.alpha.size())
    throw DataError("cross kernel has " + std::to_string(cross.cols()) + " columns, model expects " +
                    std::to_string(model.alpha.size()));
  return multiply(cross, model.alpha);
}

}  // namespace treekta
