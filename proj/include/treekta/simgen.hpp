#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treekta/dataset.hpp"
#include "treekta/random.hpp"

namespace treekta {

enum class Family { friedman, checkerboard, van_der_laan, meier1, meier2 };

inline constexpr Family kAllFamilies[] = {Family::friedman, Family::checkerboard,
                                          Family::van_der_laan, Family::meier1, Family::meier2};

std::string_view family_name(Family family);
/// Accepts the names produced by family_name ("friedman", "checkerboard",
/// "vanderlaan", "meier1", "meier2").
Family parse_family(std::string_view name);

/// Highest feature index the response reads, plus one.
std::size_t minimum_features(Family family);
/// 1 for Friedman and Checkerboard, sqrt(0.5) for the others.
double default_noise_sd(Family family);

struct ScenarioSpec {
  Family family = Family::friedman;
  std::size_t n = 0;
  std::size_t p = 0;
  /// Defaults to default_noise_sd(family).
  std::optional<double> noise_sd;
  std::uint64_t seed = 0;

  double resolved_noise_sd() const { return noise_sd.value_or(default_noise_sd(family)); }
  void validate() const;
};

/// Noiseless response f(x) for one feature row.
double response(Family family, std::span<const double> x);

/// Features are iid Uniform(0,1), except Checkerboard where each row is
/// N(0, Sigma) with Sigma_jk = 0.9^|j-k|. Y = f(X) + eps with a single
/// N(0, sd^2) draw per row. All rows are drawn before the noise.
Dataset generate(const ScenarioSpec& spec);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

/// floor(fraction * n) rows go to training, the rest to test; both row lists
/// ascending.
TrainTestSplit split_train_test(const Dataset& data, double train_fraction, Rng& rng);

/// Split with an explicit training size.
TrainTestSplit split_train_test_sized(const Dataset& data, std::size_t n_train, Rng& rng);

}  // namespace treekta
