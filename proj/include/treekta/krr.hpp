#pragma once

#include <array>
#include <span>
#include <utility>

#include "treekta/kernel.hpp"
#include "treekta/matrix.hpp"

namespace treekta {

/// Ridge values tried in ascending order; the first one for which the
/// Cholesky factorization succeeds is used.
inline constexpr std::array<double, 10> kRidgeGrid = {1e-10, 1e-9, 1e-8, 1e-7, 1e-6,
                                                      1e-5,  1e-4, 1e-3, 1e-2, 1e-1};

/// Solution of (a + ridge I) x = b for the smallest workable ridge. When
/// try_zero_first is set, ridge 0 is attempted before the grid.
/// Throws NumericalError("kernel unusable") if every ridge fails.
std::pair<Vector, double> solve_with_ridge_grid(const Matrix& a, std::span<const double> b,
                                                bool try_zero_first = false);

struct KrrModel {
  Vector alpha;
  double lambda = 0.0;
  Vector train_targets;
};

/// alpha = (K + lambda I)^-1 Y, lambda from kRidgeGrid. Targets are used raw
/// (no centering).
KrrModel fit_krr(const Matrix& k, std::span<const double> y);
inline KrrModel fit_krr(const KernelMatrix& k, std::span<const double> y) {
  return fit_krr(k.values, y);
}

/// Kx * alpha, one prediction per row of Kx.
Vector predict_krr(const KrrModel& model, const Matrix& cross);
inline Vector predict_krr(const KrrModel& model, const CrossKernel& cross) {
  return predict_krr(model, cross.values);
}

}  // namespace treekta
