#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "treekta/alignment.hpp"
#include "treekta/linalg.hpp"
#include "treekta/matrix.hpp"
#include "treekta/random.hpp"

namespace treekta {

/// n x n_L similarities of every training row to a subset of landmark rows.
struct LandmarkDesign {
  std::vector<std::size_t> landmark_indices;
  Matrix similarities;

  std::size_t n() const { return similarities.rows(); }
  std::size_t n_landmarks() const { return similarities.cols(); }
};

/// n_L distinct indices from [0, n), uniformly without replacement.
std::vector<std::size_t> select_landmarks(std::size_t n, std::size_t n_landmarks, Rng& rng);

/// Picks the landmark columns out of a kernel whose columns index training
/// rows; works for the train kernel (n x n) and cross kernels (n_test x n).
LandmarkDesign make_landmark_design(const Matrix& kernel, std::span<const std::size_t> landmarks);

/// Least-squares coefficients (LᵀL)^-1 LᵀY. A singular LᵀL falls back to
/// the ridge grid used by kernel ridge regression.
Vector landmark_fit(const LandmarkDesign& design, std::span<const double> y);

/// similarities (rows x n_L) times coefficients.
Vector landmark_predict(const Matrix& similarities, std::span<const double> coefficients);

/// Alignment of the left singular vectors of L with y, ordered by singular value.
AlignmentSpectrum landmark_alignment(const LandmarkDesign& design, std::span<const double> y,
                                     std::size_t n_components,
                                     EigenRoute route = EigenRoute::jacobi);

}  // namespace treekta
