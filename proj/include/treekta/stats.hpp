#pragma once

#include <span>

namespace treekta {

double mean(std::span<const double> v);

/// Sample variance with the n-1 denominator; 0 for fewer than two values.
double sample_variance(std::span<const double> v);
double sample_sd(std::span<const double> v);

/// Pearson correlation. Returns 0 when either input has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

/// Spearman rank correlation, ties receiving their average rank.
double spearman(std::span<const double> a, std::span<const double> b);

double mean_squared_error(std::span<const double> predicted, std::span<const double> actual);

}  // namespace treekta
