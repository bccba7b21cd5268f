#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "treekta/matrix.hpp"

namespace treekta {

/// Kernel-target alignment per component, components ordered by descending
/// eigen/singular value. Component i (1-based) is entry i-1.
struct AlignmentSpectrum {
  Vector values;
  Vector alignment;

  std::size_t size() const { return alignment.size(); }
};

struct AlignmentSummary {
  /// Alignment of the leading component.
  double first = 0.0;
  /// Largest alignment over all components of the spectrum.
  double best = 0.0;
  /// 1-based index of the best component (first one on ties).
  std::size_t best_index = 1;
  /// Mean of the five largest alignments among components 1..10.
  double top5_of_10 = 0.0;
};

inline constexpr std::size_t kDefaultComponents = 30;

/// alignment_i = |pearson(u_i, y)| for the first n_components columns of u,
/// 0 when either side has zero variance.
AlignmentSpectrum alignment_spectrum(const Matrix& u, std::span<const double> values,
                                     std::span<const double> y, std::size_t n_components);

/// Unnormalized |u_iᵀ y| for every column of u.
Vector scalar_alignment(const Matrix& u, std::span<const double> y);

/// Needs at least 10 components.
AlignmentSummary summarize_alignment(const AlignmentSpectrum& spectrum);

/// CSV with header "component,value,alignment".
void write_spectrum_csv(std::ostream& out, const AlignmentSpectrum& spectrum);

}  // namespace treekta
