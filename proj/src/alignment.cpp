#include "treekta/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "treekta/error.hpp"
#include "treekta/stats.hpp"

namespace treekta {

AlignmentSpectrum alignment_spectrum(const Matrix& u, std::span<const double> values,
                                     std::span<const double> y, std::size_t n_components) {
  if (u.rows() < 2) throw InvalidArgument("alignment needs at least two samples");
  if (u.rows() != y.size()) throw DataError("eigenvector length differs from target length");
  if (n_components > u.cols() || n_components > values.size())
    throw InvalidArgument("requested " + std::to_string(n_components) + " components, only " +
                          std::to_string(std::min(u.cols(), values.size())) + " available");
  AlignmentSpectrum out;
  out.values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n_components));
  out.alignment.resize(n_components);
  for (std::size_t i = 0; i < n_components; ++i) {
    const Vector column = u.column(i);
    out.alignment[i] = std::abs(pearson(column, y));
  }
  return out;
}

Vector scalar_alignment(const Matrix& u, std::span<const double> y) {
  if (u.rows() != y.size()) throw DataError("eigenvector length differs from target length");
  Vector out(u.cols(), 0.0);
  for (std::size_t r = 0; r < u.rows(); ++r)
    for (std::size_t c = 0; c < u.cols(); ++c) out[c] += u(r, c) * y[r];
  for (double& v : out) v = std::abs(v);
  return out;
}

AlignmentSummary summarize_alignment(const AlignmentSpectrum& spectrum) {
  if (spectrum.size() < 10)
    throw InvalidArgument("alignment summary needs at least 10 components, got " +
                          std::to_string(spectrum.size()));
  AlignmentSummary s;
  const auto& a = spectrum.alignment;
  s.first = a[0];
  const auto best = std::max_element(a.begin(), a.end());
  s.best = *best;
  s.best_index = static_cast<std::size_t>(best - a.begin()) + 1;
  std::vector<double> leading(a.begin(), a.begin() + 10);
  std::partial_sort(leading.begin(), leading.begin() + 5, leading.end(), std::greater<>());
  s.top5_of_10 = (leading[0] + leading[1] + leading[2] + leading[3] + leading[4]) / 5.0;
  return s;
}

void write_spectrum_csv(std::ostream& out, const AlignmentSpectrum& spectrum) {
  out << "component,value,alignment\n";
  char buf[96];
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i + 1, spectrum.values[i],
                  spectrum.alignment[i]);
    out << buf;
  }
}

}  // namespace treekta
