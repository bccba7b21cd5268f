#include "treekta/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "treekta/error.hpp"
#include "treekta/linalg.hpp"

namespace treekta {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::friedman: return "friedman";
    case Family::checkerboard: return "checkerboard";
    case Family::van_der_laan: return "vanderlaan";
    case Family::meier1: return "meier1";
    case Family::meier2: return "meier2";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : kAllFamilies)
    if (family_name(f) == name) return f;
  if (name == "van_der_laan" || name == "van-der-laan") return Family::van_der_laan;
  throw InvalidArgument("unknown simulation family '" + std::string(name) + "'");
}

std::size_t minimum_features(Family family) {
  switch (family) {
    case Family::friedman: return 5;
    case Family::checkerboard: return 20;
    case Family::van_der_laan: return 10;
    case Family::meier1: return 4;
    case Family::meier2: return 4;
  }
  return 0;
}

double default_noise_sd(Family family) {
  switch (family) {
    case Family::friedman:
    case Family::checkerboard: return 1.0;
    default: return std::sqrt(0.5);
  }
}

void ScenarioSpec::validate() const {
  if (p < minimum_features(family))
    throw InvalidArgument(std::string(family_name(family)) + " needs p >= " +
                          std::to_string(minimum_features(family)) + ", got " + std::to_string(p));
  if (n < 1) throw InvalidArgument("scenario needs at least one sample");
  if (!(resolved_noise_sd() >= 0.0)) throw InvalidArgument("noise sd must be non-negative");
}

double response(Family family, std::span<const double> x) {
  if (x.size() < minimum_features(family)) throw InvalidArgument("feature row too short");
  constexpr double pi = std::numbers::pi;
  // Centered copies on [-1, 1) for the van der Laan and Meier designs.
  auto c = [&](std::size_t j) { return 2.0 * (x[j - 1] - 0.5); };
  auto v = [&](std::size_t j) { return x[j - 1]; };
  switch (family) {
    case Family::friedman:
      return 10.0 * std::sin(pi * v(1) * v(2)) + 20.0 * (v(3) - 0.5) * (v(3) - 0.5) + 10.0 * v(4) +
             5.0 * v(5);
    case Family::checkerboard:
      return 2.0 * v(5) * v(10) + 2.0 * v(15) * v(20);
    case Family::van_der_laan:
      return c(1) * c(2) + c(3) * c(3) + c(8) * c(10) - c(6) * c(6);
    case Family::meier1:
      return -std::sin(2.0 * c(1)) + c(2) * c(2) + c(3) - std::exp(c(4));
    case Family::meier2: {
      const double s4 = std::sin(2.0 * pi * c(4));
      const double cos4 = std::cos(2.0 * pi * c(4));
      return -c(1) + (2.0 * c(2) - 1.0) * (2.0 * c(2) - 1.0) + std::sin(2.0 * pi * c(3)) / (2.0 - s4) +
             2.0 * cos4 + 4.0 * cos4 * cos4;
    }
  }
  return 0.0;
}

Dataset generate(const ScenarioSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Matrix x(spec.n, spec.p);
  if (spec.family == Family::checkerboard) {
    Matrix sigma(spec.p, spec.p);
    for (std::size_t j = 0; j < spec.p; ++j)
      for (std::size_t k = 0; k < spec.p; ++k)
        sigma(j, k) = std::pow(0.9, std::abs(static_cast<double>(j) - static_cast<double>(k)));
    const Matrix lower = cholesky(sigma);
    Vector z(spec.p);
    for (std::size_t i = 0; i < spec.n; ++i) {
      for (double& zj : z) zj = standard_normal(rng);
      auto row = x.row(i);
      for (std::size_t j = 0; j < spec.p; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k <= j; ++k) s += lower(j, k) * z[k];
        row[j] = s;
      }
    }
  } else {
    for (double& value : std::span<double>(x.data(), spec.n * spec.p)) value = uniform01(rng);
  }

  const double sd = spec.resolved_noise_sd();
  Vector y(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) y[i] = response(spec.family, x.row(i));
  for (std::size_t i = 0; i < spec.n; ++i) y[i] += sd * standard_normal(rng);

  std::vector<std::string> names(spec.p);
  for (std::size_t j = 0; j < spec.p; ++j) names[j] = "x" + std::to_string(j + 1);
  return Dataset(std::move(x), std::move(y), std::move(names));
}

TrainTestSplit split_train_test_sized(const Dataset& data, std::size_t n_train, Rng& rng) {
  if (n_train == 0 || n_train >= data.n())
    throw InvalidArgument("split leaves an empty training or test set (n = " +
                          std::to_string(data.n()) + ", train = " + std::to_string(n_train) + ")");
  auto picked = sample_without_replacement(rng, data.n(), data.n());
  TrainTestSplit split;
  split.train_rows.assign(picked.begin(), picked.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test_rows.assign(picked.begin() + static_cast<std::ptrdiff_t>(n_train), picked.end());
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  split.train = data.select(split.train_rows);
  split.test = data.select(split.test_rows);
  return split;
}

TrainTestSplit split_train_test(const Dataset& data, double train_fraction, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw InvalidArgument("train fraction must lie strictly between 0 and 1");
  const auto n_train =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(data.n())));
  return split_train_test_sized(data, n_train, rng);
}

}  // namespace treekta
