#include "treekta/landmark.hpp"

#include <algorithm>
#include <string>

#include "treekta/error.hpp"
#include "treekta/krr.hpp"

namespace treekta {

std::vector<std::size_t> select_landmarks(std::size_t n, std::size_t n_landmarks, Rng& rng) {
  if (n_landmarks > n)
    throw InvalidArgument("cannot select " + std::to_string(n_landmarks) + " landmarks from " +
                          std::to_string(n) + " rows");
  return sample_without_replacement(rng, n, n_landmarks);
}

LandmarkDesign make_landmark_design(const Matrix& kernel, std::span<const std::size_t> landmarks) {
  LandmarkDesign design;
  design.landmark_indices.assign(landmarks.begin(), landmarks.end());
  design.similarities = Matrix(kernel.rows(), landmarks.size());
  for (std::size_t j = 0; j < landmarks.size(); ++j)
    if (landmarks[j] >= kernel.cols()) throw InvalidArgument("landmark index out of range");
  for (std::size_t i = 0; i < kernel.rows(); ++i)
    for (std::size_t j = 0; j < landmarks.size(); ++j)
      design.similarities(i, j) = kernel(i, landmarks[j]);
  return design;
}

Vector landmark_fit(const LandmarkDesign& design, std::span<const double> y) {
  const Matrix& l = design.similarities;
  if (l.rows() != y.size()) throw DataError("design rows differ from target length");
  if (l.rows() < l.cols())
    throw InvalidArgument("landmark design needs at least as many rows as landmarks");
  if (std::all_of(l.values().begin(), l.values().end(), [](double v) { return v == 0.0; }))
    throw NumericalError("degenerate design");
  const Matrix gram = multiply_transposed_left(l, l);
  Vector rhs(l.cols(), 0.0);
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) rhs[j] += l(i, j) * y[i];
  return solve_with_ridge_grid(gram, rhs, /*try_zero_first=*/true).first;
}

Vector landmark_predict(const Matrix& similarities, std::span<const double> coefficients) {
  return multiply(similarities, coefficients);
}

AlignmentSpectrum landmark_alignment(const LandmarkDesign& design, std::span<const double> y,
                                     std::size_t n_components, EigenRoute route) {
  if (n_components > design.n_landmarks())
    throw InvalidArgument("more components requested than landmarks");
  const ThinSvd svd = thin_svd_leading(design.similarities, n_components, route);
  return alignment_spectrum(svd.left, svd.singular_values, y, n_components);
}

}  // namespace treekta
