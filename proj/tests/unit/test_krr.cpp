#include "doctest.h"
#include "oracles.hpp"
#include "treekta/error.hpp"
#include "treekta/kernel.hpp"
#include "treekta/krr.hpp"

using namespace treekta;

TEST_CASE("identity kernel uses the smallest ridge") {
  const Vector y = {1.0, -2.0, 0.5, 4.0};
  const KrrModel m = fit_krr(Matrix::identity(4), y);
  CHECK(m.lambda == 1e-10);
  for (std::size_t i = 0; i < 4; ++i) CHECK(m.alpha[i] == doctest::Approx(y[i]).epsilon(1e-8));
}

TEST_CASE("zero targets give zero coefficients") {
  oracle::Gen g(1);
  const Matrix k = oracle::random_psd(g, 10, 20);
  const KrrModel m = fit_krr(k, Vector(10, 0.0));
  for (double a : m.alpha) CHECK(a == 0.0);
}

TEST_CASE("alpha matches the dense-inverse oracle") {
  oracle::Gen g(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Dataset d = oracle::random_dataset(g, 20, 3);
    const KernelMatrix k = kernel_matrix(fit_rf(d, 50, TreeConfig::random_forest(3), g.seed()), d);
    const KrrModel m = fit_krr(k, d.y);
    const Vector expect = oracle::mat_vec(oracle::inverse(oracle::add_ridge(k.values, m.lambda)), d.y);
    for (std::size_t i = 0; i < 20; ++i)
      CHECK(m.alpha[i] == doctest::Approx(expect[i]).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("singular kernels climb the ridge grid") {
  const Matrix ones(3, 3, 1.0);
  const KrrModel m = fit_krr(ones, Vector{1, 2, 3});
  CHECK(m.lambda >= 1e-10);
  const Vector r = oracle::mat_vec(oracle::add_ridge(ones, m.lambda), m.alpha);
  CHECK(r[2] == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("unusable kernels are reported") {
  Matrix bad = Matrix::identity(2);
  bad(0, 1) = bad(1, 0) = NAN;
  CHECK_THROWS_WITH_AS(fit_krr(bad, Vector{1, 2}), doctest::Contains("kernel unusable"),
                       NumericalError);
  const Matrix negative(2, 2, {-1, 0, 0, -1});
  CHECK_THROWS_WITH_AS(fit_krr(negative, Vector{1, 2}), doctest::Contains("kernel unusable"),
                       NumericalError);
}

TEST_CASE("prediction examples") {
  KrrModel m;
  m.alpha = {0.5, -1.0, 2.0};
  CHECK(predict_krr(m, Matrix(1, 3, 0.0)) == Vector{0.0});
  CHECK(predict_krr(m, Matrix(1, 3, {0, 1, 0})) == Vector{-1.0});
  CHECK_THROWS_AS(predict_krr(m, Matrix(1, 2)), DataError);
}

TEST_CASE("duplicate training row predicts its target with an identity-like kernel") {
  oracle::Gen g(3);
  const Dataset d = oracle::random_dataset(g, 20, 3);
  TreeConfig c;
  c.min_node_size = 1;
  c.mtry = 3;
  std::vector<std::size_t> all(d.n());
  for (std::size_t i = 0; i < d.n(); ++i) all[i] = i;
  Rng rng(1);
  // Grown to purity on distinct rows: every row sits alone in its leaf.
  const std::vector<Tree> trees = {fit_tree(d, all, c, std::nullopt, rng)};
  const KernelMatrix k = kernel_matrix(trees, d);
  CHECK(k.values == Matrix::identity(20));
  const KrrModel m = fit_krr(k, d.y);
  const std::vector<std::size_t> rows = {4, 11};
  const Vector pred = predict_krr(m, cross_kernel(trees, d.select(rows), d));
  CHECK(pred[0] == doctest::Approx(d.y[4]).epsilon(1e-8));
  CHECK(pred[1] == doctest::Approx(d.y[11]).epsilon(1e-8));
}

TEST_CASE("training predictions equal Y minus lambda alpha") {
  oracle::Gen g(4);
  const Dataset d = oracle::random_dataset(g, 40, 3);
  const RandomForest f = fit_rf(d, 30, TreeConfig::random_forest(3), 2);
  const KernelMatrix k = kernel_matrix(f, d);
  const KrrModel m = fit_krr(k, d.y);
  const Vector fitted = predict_krr(m, cross_kernel(f, d, d));
  for (std::size_t i = 0; i < d.n(); ++i)
    CHECK(std::abs(fitted[i] - (d.y[i] - m.lambda * m.alpha[i])) < 1e-8);
}

TEST_CASE("a duplicated tree leaves the kernel and alpha unchanged") {
  oracle::Gen g(5);
  const Dataset d = oracle::random_dataset(g, 30, 2);
  RandomForest f = fit_rf(d, 2, TreeConfig::random_forest(2), 9);
  f.trees[1] = f.trees[0];
  std::vector<Tree> one = {f.trees[0]};
  const KrrModel a = fit_krr(kernel_matrix(f, d), d.y);
  const KrrModel b = fit_krr(kernel_matrix(one, d), d.y);
  CHECK(a.alpha == b.alpha);
}
