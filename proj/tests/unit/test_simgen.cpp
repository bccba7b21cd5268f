#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "treekta/error.hpp"
#include "treekta/simgen.hpp"
#include "treekta/stats.hpp"

using namespace treekta;

TEST_CASE("closed-form evaluations") {
  const Vector half(40, 0.5), zero(40, 0.0);
  CHECK(response(Family::friedman, half) == doctest::Approx(14.5711).epsilon(1e-5));
  CHECK(std::abs(response(Family::friedman, half) - (10.0 * std::sin(M_PI / 4) + 7.5)) < 1e-12);
  CHECK(response(Family::checkerboard, zero) == 0.0);
  CHECK(std::abs(response(Family::meier2, half) - 7.0) < 1e-12);
  CHECK(std::abs(response(Family::van_der_laan, half)) < 1e-12);
  CHECK(std::abs(response(Family::meier1, half) + 1.0) < 1e-12);
}

TEST_CASE("responses match independently coded formulas") {
  oracle::Gen g(1);
  for (int k = 0; k < 100; ++k) {
    Vector x(20);
    for (double& v : x) v = g.uniform();
    Vector z(20);
    for (double& v : z) v = g.normal();
    CHECK(std::abs(response(Family::friedman, x) - oracle::friedman(x)) < 1e-12);
    CHECK(std::abs(response(Family::checkerboard, z) - oracle::checkerboard(z)) < 1e-12);
    CHECK(std::abs(response(Family::van_der_laan, x) - oracle::van_der_laan(x)) < 1e-12);
    CHECK(std::abs(response(Family::meier1, x) - oracle::meier1(x)) < 1e-12);
    CHECK(std::abs(response(Family::meier2, x) - oracle::meier2(x)) < 1e-12);
  }
}

TEST_CASE("noise-free generation reproduces the response") {
  for (Family f : kAllFamilies) {
    const Dataset d = generate({f, 50, 20, 0.0, 4});
    for (std::size_t i = 0; i < d.n(); ++i) CHECK(d.y[i] == response(f, d.row(i)));
  }
}

TEST_CASE("family minimum feature counts") {
  CHECK_THROWS_AS(generate({Family::friedman, 10, 4, {}, 1}), InvalidArgument);
  CHECK_THROWS_AS(generate({Family::checkerboard, 10, 19, {}, 1}), InvalidArgument);
  CHECK_THROWS_AS(generate({Family::van_der_laan, 10, 9, {}, 1}), InvalidArgument);
  CHECK_THROWS_AS(generate({Family::meier1, 10, 3, {}, 1}), InvalidArgument);
  CHECK_NOTHROW(generate({Family::meier2, 10, 4, {}, 1}));
}

TEST_CASE("same seed gives identical data") {
  for (Family f : kAllFamilies) CHECK(generate({f, 40, 20, {}, 9}) == generate({f, 40, 20, {}, 9}));
  CHECK(!(generate({Family::friedman, 40, 20, {}, 9}) == generate({Family::friedman, 40, 20, {}, 10})));
}

TEST_CASE("uniform families stay in the unit cube") {
  const Dataset d = generate({Family::meier1, 500, 8, {}, 3});
  for (double v : d.x.values()) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("noise has the configured spread") {
  const Dataset d = generate({Family::van_der_laan, 20000, 10, {}, 5});
  Vector residual(d.n());
  for (std::size_t i = 0; i < d.n(); ++i) residual[i] = d.y[i] - response(Family::van_der_laan, d.row(i));
  CHECK(sample_sd(residual) == doctest::Approx(std::sqrt(0.5)).epsilon(0.02));
  CHECK(std::abs(mean(residual)) < 0.02);
}

TEST_CASE("checkerboard covariance follows 0.9^|j-k|") {
  const Dataset d = generate({Family::checkerboard, 20000, 20, {}, 6});
  double worst = 0.0;
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t k = 0; k < 5; ++k) {
      double s = 0.0, mj = 0.0, mk = 0.0;
      for (std::size_t i = 0; i < d.n(); ++i) {
        mj += d.x(i, j);
        mk += d.x(i, k);
      }
      mj /= static_cast<double>(d.n());
      mk /= static_cast<double>(d.n());
      for (std::size_t i = 0; i < d.n(); ++i) s += (d.x(i, j) - mj) * (d.x(i, k) - mk);
      s /= static_cast<double>(d.n() - 1);
      const double expect = std::pow(0.9, std::abs(static_cast<double>(j) - static_cast<double>(k)));
      worst = std::max(worst, std::abs(s - expect));
    }
  CHECK(worst < 0.03);
}

TEST_CASE("train/test split sizes and partition") {
  Rng rng(2);
  const Dataset d = generate({Family::friedman, 800, 20, {}, 1});
  const TrainTestSplit s = split_train_test(d, 0.75, rng);
  CHECK(s.train.n() == 600);
  CHECK(s.test.n() == 200);
  std::vector<std::size_t> all = s.train_rows;
  all.insert(all.end(), s.test_rows.begin(), s.test_rows.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < 800; ++i) CHECK(all[i] == i);
  CHECK(std::is_sorted(s.train_rows.begin(), s.train_rows.end()));
  for (std::size_t k = 0; k < s.train_rows.size(); k += 50) {
    CHECK(s.train.y[k] == d.y[s.train_rows[k]]);
  }

  const Dataset small = generate({Family::friedman, 4, 5, {}, 1});
  const TrainTestSplit t = split_train_test(small, 0.75, rng);
  CHECK(t.train.n() == 3);
  CHECK(t.test.n() == 1);

  CHECK_THROWS_AS(split_train_test(small, 1.0, rng), InvalidArgument);
  CHECK_THROWS_AS(split_train_test(small, 0.1, rng), InvalidArgument);
  CHECK(split_train_test_sized(d, 500, rng).train.n() == 500);
}

TEST_CASE("family names round-trip") {
  for (Family f : kAllFamilies) CHECK(parse_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_family("sinc"), InvalidArgument);
}
