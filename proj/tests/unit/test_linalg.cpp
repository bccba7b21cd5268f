#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "treekta/error.hpp"
#include "treekta/kernel.hpp"
#include "treekta/linalg.hpp"

using namespace treekta;

namespace {

Matrix eig_reconstruct(const EigenDecomposition& e) {
  return oracle::reconstruct(e.vectors, e.values, e.vectors);
}

void check_signs(const Matrix& v) {
  for (std::size_t c = 0; c < v.cols(); ++c) {
    std::size_t arg = 0;
    for (std::size_t r = 1; r < v.rows(); ++r)
      if (std::abs(v(r, c)) > std::abs(v(arg, c))) arg = r;
    CHECK(v(arg, c) > 0.0);
  }
}

}  // namespace

TEST_CASE("identity eigenvalues") {
  const EigenDecomposition e = sym_eig(Matrix::identity(3));
  CHECK(e.values == Vector{1, 1, 1});
}

TEST_CASE("2x2 analytic eigenpairs") {
  const EigenDecomposition e = sym_eig(Matrix(2, 2, {2, 1, 1, 2}));
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(r));
  CHECK(e.vectors(0, 0) * e.vectors(1, 0) > 0.0);
  CHECK(e.vectors(0, 1) * e.vectors(1, 1) < 0.0);
  check_signs(e.vectors);
}

TEST_CASE("random kernel reconstructs to 1e-9") {
  oracle::Gen g(1);
  const Dataset d = oracle::random_dataset(g, 50, 3);
  const Matrix k = kernel_matrix(fit_rf(d, 40, TreeConfig::random_forest(3), 1), d).values;
  const EigenDecomposition e = sym_eig(k);
  CHECK(oracle::relative_error(eig_reconstruct(e), k) < 1e-9);
  CHECK(oracle::orthonormality_error(e.vectors) < 1e-9);
  double trace = 0.0;
  for (double v : e.values) trace += v;
  CHECK(trace == doctest::Approx(50.0).epsilon(1e-8));
  CHECK(e.values.back() >= -1e-8);
  for (std::size_t i = 1; i < e.values.size(); ++i) CHECK(e.values[i] <= e.values[i - 1]);
}

TEST_CASE("random symmetric matrices decompose accurately") {
  oracle::Gen g(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = oracle::random_symmetric(g, g.index(1, 60));
    const EigenDecomposition e = sym_eig(a);
    CHECK(oracle::relative_error(eig_reconstruct(e), a) < 1e-9);
    CHECK(oracle::orthonormality_error(e.vectors) < 1e-9);
    check_signs(e.vectors);
  }
}

TEST_CASE("non-symmetric input is rejected") {
  CHECK_THROWS_AS(sym_eig(Matrix(2, 2, {1, 2, 3, 4})), InvalidArgument);
  CHECK_THROWS_AS(sym_eig(Matrix(2, 3)), InvalidArgument);
  CHECK_NOTHROW(sym_eig(Matrix(2, 2, {1, 0.5 + 1e-12, 0.5, 1})));
}

TEST_CASE("Jacobi and LAPACK leading eigenpairs agree") {
  oracle::Gen g(3);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = g.index(12, 70);
    const Matrix a = oracle::random_psd(g, n, n / 2 + 3);
    const std::size_t k = g.index(1, n / 2);
    const EigenDecomposition full = sym_eig_leading(a, k, EigenRoute::jacobi);
    const EigenDecomposition fast = sym_eig_leading(a, k, EigenRoute::lapack_leading);
    REQUIRE(fast.vectors.cols() == k);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(fast.values[i] == doctest::Approx(full.values[i]).epsilon(1e-10));
      // Distinct eigenvalues: vectors agree after the shared sign rule.
      if (i + 1 < k && full.values[i] - full.values[i + 1] < 1e-6) continue;
      if (i > 0 && full.values[i - 1] - full.values[i] < 1e-6) continue;
      for (std::size_t r = 0; r < n; ++r)
        CHECK(fast.vectors(r, i) == doctest::Approx(full.vectors(r, i)).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("thin SVD examples") {
  const ThinSvd id = thin_svd(Matrix::identity(4));
  for (double s : id.singular_values) CHECK(s == doctest::Approx(1.0));

  Matrix padded(5, 2);
  padded(0, 0) = 3.0;
  padded(1, 1) = 2.0;
  const ThinSvd d = thin_svd(padded);
  CHECK(d.singular_values[0] == doctest::Approx(3.0));
  CHECK(d.singular_values[1] == doctest::Approx(2.0));

  CHECK_THROWS_AS(thin_svd(Matrix(2, 3)), InvalidArgument);
}

TEST_CASE("random 60x20 SVD reconstructs") {
  oracle::Gen g(4);
  const Matrix l = oracle::random_matrix(g, 60, 20);
  const ThinSvd s = thin_svd(l);
  CHECK(oracle::relative_error(oracle::reconstruct(s.left, s.singular_values, s.right), l) < 1e-9);
  CHECK(oracle::orthonormality_error(s.left) < 1e-9);
  CHECK(oracle::orthonormality_error(s.right) < 1e-9);
  check_signs(s.left);
}

TEST_CASE("singular values square to the eigenvalues of L Lᵀ") {
  oracle::Gen g(5);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t r = g.index(1, 12), n = r + g.index(0, 20);
    const Matrix l = oracle::random_matrix(g, n, r);
    const ThinSvd s = thin_svd(l);
    const EigenDecomposition e = sym_eig(multiply(l, l.transpose()));
    for (std::size_t i = 0; i < r; ++i)
      CHECK(s.singular_values[i] == doctest::Approx(std::sqrt(std::max(e.values[i], 0.0))).epsilon(1e-8));
  }
}

TEST_CASE("rank-deficient SVD still has orthonormal left vectors") {
  oracle::Gen g(6);
  Matrix l = oracle::random_matrix(g, 30, 6);
  for (std::size_t i = 0; i < 30; ++i) {
    l(i, 4) = l(i, 0) + l(i, 1);
    l(i, 5) = 0.0;
  }
  const ThinSvd s = thin_svd(l);
  CHECK(oracle::orthonormality_error(s.left) < 1e-9);
  CHECK(oracle::relative_error(oracle::reconstruct(s.left, s.singular_values, s.right), l) < 1e-9);
  CHECK(s.singular_values[5] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("leading SVD routes agree") {
  oracle::Gen g(7);
  const Matrix l = oracle::random_matrix(g, 80, 25);
  const ThinSvd a = thin_svd_leading(l, 10, EigenRoute::jacobi);
  const ThinSvd b = thin_svd_leading(l, 10, EigenRoute::lapack_leading);
  for (std::size_t i = 0; i < 10; ++i)
    CHECK(a.singular_values[i] == doctest::Approx(b.singular_values[i]).epsilon(1e-10));
  CHECK(oracle::orthonormality_error(b.left) < 1e-9);
}

TEST_CASE("solve_spd examples") {
  const Vector b = {1.0, -2.0, 3.5};
  CHECK(solve_spd(Matrix::identity(3), 0.0, b) == b);
  const Vector half = solve_spd(Matrix::identity(3), 1.0, b);
  for (std::size_t i = 0; i < 3; ++i) CHECK(half[i] == doctest::Approx(b[i] / 2.0));
}

TEST_CASE("solve_spd matches the explicit-inverse oracle") {
  oracle::Gen g(8);
  const Matrix a = oracle::random_psd(g, 30, 30);
  Vector b(30);
  for (double& v : b) v = g.normal();
  const Vector x = solve_spd(a, 1e-6, b);
  const Vector expect = oracle::mat_vec(oracle::inverse(oracle::add_ridge(a, 1e-6)), b);
  for (std::size_t i = 0; i < 30; ++i) CHECK(x[i] == doctest::Approx(expect[i]).epsilon(1e-8));
  const Vector r = oracle::mat_vec(oracle::add_ridge(a, 1e-6), x);
  double worst = 0.0, bmax = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    worst = std::max(worst, std::abs(r[i] - b[i]));
    bmax = std::max(bmax, std::abs(b[i]));
  }
  CHECK(worst < 1e-8 * bmax);
}

TEST_CASE("solve_spd minimizes the ridge quadratic") {
  oracle::Gen g(9);
  const Matrix a = oracle::random_psd(g, 15, 8);
  Vector b(15);
  for (double& v : b) v = g.normal();
  const double ridge = 0.1;
  const Vector x = solve_spd(a, ridge, b);
  const Matrix ar = oracle::add_ridge(a, ridge);
  auto objective = [&](const Vector& z) {
    const Vector az = oracle::mat_vec(ar, z);
    double q = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) q += 0.5 * z[i] * az[i] - b[i] * z[i];
    return q;
  };
  const double best = objective(x);
  for (int k = 0; k < 50; ++k) {
    Vector delta(15);
    double norm = 0.0;
    for (double& v : delta) {
      v = g.normal();
      norm += v * v;
    }
    Vector z = x;
    for (std::size_t i = 0; i < 15; ++i) z[i] += 1e-3 * delta[i] / std::sqrt(norm);
    CHECK(objective(z) >= best);
  }
}

TEST_CASE("non positive definite systems raise the dedicated error") {
  const Matrix a(2, 2, {1, 2, 2, 1});
  const Vector b = {1, 1};
  CHECK_THROWS_AS(solve_spd(a, 0.0, b), NotPositiveDefinite);
  CHECK_THROWS_AS(cholesky(Matrix(2, 2)), NotPositiveDefinite);
  const Matrix l = cholesky(Matrix(2, 2, {4, 2, 2, 3}));
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)));
}
