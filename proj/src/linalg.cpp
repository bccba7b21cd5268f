#include "treekta/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "treekta/error.hpp"

namespace treekta {

namespace {

void require_symmetric(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("matrix is not square");
  double scale = 1.0;
  for (double v : a.values()) {
    if (!std::isfinite(v)) throw NumericalError("matrix has non-finite entries");
    scale = std::max(scale, std::abs(v));
  }
  if (!is_symmetric(a, 1e-10 * scale)) throw InvalidArgument("matrix is not symmetric");
}

/// Sorts eigenpairs (columns of `vectors`) by descending value.
EigenDecomposition sorted(Vector values, const Matrix& vectors) {
  const std::size_t n = vectors.rows();
  const std::size_t k = values.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
  EigenDecomposition out;
  out.values.resize(k);
  out.vectors = Matrix(n, k);
  for (std::size_t c = 0; c < k; ++c) {
    out.values[c] = values[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = vectors(r, order[c]);
  }
  normalize_column_signs(out.vectors);
  return out;
}

EigenDecomposition truncate(EigenDecomposition full, std::size_t k) {
  if (k >= full.values.size()) return full;
  EigenDecomposition out;
  out.values.assign(full.values.begin(), full.values.begin() + static_cast<std::ptrdiff_t>(k));
  out.vectors = Matrix(full.vectors.rows(), k);
  for (std::size_t r = 0; r < full.vectors.rows(); ++r)
    for (std::size_t c = 0; c < k; ++c) out.vectors(r, c) = full.vectors(r, c);
  return out;
}

EigenDecomposition lapack_leading(const Matrix& a, std::size_t k) {
  const auto n = static_cast<lapack_int>(a.rows());
  std::vector<double> work(a.values());  // symmetric, so row-major = column-major
  std::vector<double> w(a.rows());
  std::vector<double> z(a.rows() * k);
  std::vector<lapack_int> support(2 * k);
  lapack_int found = 0;
  const lapack_int il = n - static_cast<lapack_int>(k) + 1;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, work.data(), n, 0.0, 0.0, il, n, 0.0,
                     &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found != static_cast<lapack_int>(k))
    throw NumericalError("dsyevr failed (info " + std::to_string(info) + ")");
  Matrix vectors(a.rows(), k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) vectors(r, c) = z[c * a.rows() + r];
  w.resize(k);
  return sorted(std::move(w), vectors);
}

}  // namespace

bool is_symmetric(const Matrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tolerance) return false;
  return true;
}

EigenDecomposition sym_eig(const Matrix& input) {
  require_symmetric(input);
  const std::size_t n = input.rows();
  Matrix a = input;
  // Rows of vt are the eigenvectors, which keeps rotations contiguous.
  Matrix vt = Matrix::identity(n);

  const double norm = frobenius_norm(a);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && norm > 0.0; ++sweep) {
    if (off_norm() < 1e-12 * norm) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        auto row_p = a.row(p);
        auto row_q = a.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = row_p[k];
          const double aqk = row_q[k];
          row_p[k] = c * apk - s * aqk;
          row_q[k] = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - s * y;
          vq[k] = s * x + c * y;
        }
      }
    }
  }

  Vector values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  return sorted(std::move(values), vt.transpose());
}

EigenDecomposition sym_eig_leading(const Matrix& a, std::size_t k, EigenRoute route) {
  require_symmetric(a);
  if (k == 0 || k > a.rows()) throw InvalidArgument("requested eigenpair count out of range");
  if (route == EigenRoute::jacobi) return truncate(sym_eig(a), k);
  return lapack_leading(a, k);
}

void normalize_column_signs(Matrix& vectors, Matrix* companion) {
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      if (std::abs(vectors(r, c)) > best) {
        best = std::abs(vectors(r, c));
        arg = r;
      }
    }
    if (vectors.rows() > 0 && vectors(arg, c) < 0.0) {
      for (std::size_t r = 0; r < vectors.rows(); ++r) vectors(r, c) = -vectors(r, c);
      if (companion)
        for (std::size_t r = 0; r < companion->rows(); ++r) (*companion)(r, c) = -(*companion)(r, c);
    }
  }
}

namespace {

ThinSvd svd_from_gram(const Matrix& l, const EigenDecomposition& gram) {
  const std::size_t n = l.rows();
  const std::size_t r = gram.values.size();
  ThinSvd out;
  out.right = gram.vectors;
  out.singular_values.resize(r);
  for (std::size_t i = 0; i < r; ++i) out.singular_values[i] = std::sqrt(std::max(gram.values[i], 0.0));

  const double cutoff = 1e-12 * (r > 0 ? out.singular_values[0] : 0.0);
  out.left = multiply(l, out.right);
  std::vector<bool> deficient(r, false);
  for (std::size_t c = 0; c < r; ++c) {
    if (out.singular_values[c] > cutoff && out.singular_values[c] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) out.left(i, c) /= out.singular_values[c];
    } else {
      deficient[c] = true;
      out.singular_values[c] = 0.0;
    }
  }

  // Re-orthogonalize (modified Gram-Schmidt, twice) and fill deficient
  // columns from the standard basis.
  std::size_t next_basis = 0;
  for (std::size_t c = 0; c < r; ++c) {
    Vector v(n);
    auto project_out = [&] {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t prev = 0; prev < c; ++prev) {
          double d = 0.0;
          for (std::size_t i = 0; i < n; ++i) d += out.left(i, prev) * v[i];
          for (std::size_t i = 0; i < n; ++i) v[i] -= d * out.left(i, prev);
        }
      }
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    };
    double len = 0.0;
    if (!deficient[c]) {
      for (std::size_t i = 0; i < n; ++i) v[i] = out.left(i, c);
      len = project_out();
    }
    if (deficient[c] || len < 0.5) {
      while (true) {
        if (next_basis >= n) throw NumericalError("cannot complete an orthonormal basis");
        std::fill(v.begin(), v.end(), 0.0);
        v[next_basis++] = 1.0;
        len = project_out();
        if (len > 1e-6) break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.left(i, c) = v[i] / len;
  }
  normalize_column_signs(out.left, &out.right);
  return out;
}

}  // namespace

ThinSvd thin_svd(const Matrix& l) {
  if (l.cols() == 0) throw InvalidArgument("matrix has no columns");
  if (l.rows() < l.cols()) throw InvalidArgument("thin_svd needs rows >= columns; transpose first");
  return svd_from_gram(l, sym_eig(multiply_transposed_left(l, l)));
}

ThinSvd thin_svd_leading(const Matrix& l, std::size_t k, EigenRoute route) {
  if (l.cols() == 0) throw InvalidArgument("matrix has no columns");
  if (l.rows() < l.cols()) throw InvalidArgument("thin_svd needs rows >= columns; transpose first");
  return svd_from_gram(l, sym_eig_leading(multiply_transposed_left(l, l), k, route));
}

Matrix cholesky(const Matrix& a, double ridge) {
  if (a.rows() != a.cols()) throw InvalidArgument("cholesky: matrix is not square");
  if (!(ridge >= 0.0)) throw InvalidArgument("ridge must be non-negative");
  const std::size_t n = a.rows();
  // Row-major lower triangle == column-major upper triangle.
  std::vector<double> f(a.values());
  for (double v : f)
    if (!std::isfinite(v)) throw NumericalError("matrix has non-finite entries");
  for (std::size_t i = 0; i < n; ++i) f[i * n + i] += ridge;
  const lapack_int info =
      LAPACKE_dpotrf(LAPACK_ROW_MAJOR, 'L', static_cast<lapack_int>(n), f.data(),
                     static_cast<lapack_int>(n));
  if (info > 0)
    throw NotPositiveDefinite("matrix is not positive definite (leading minor " +
                              std::to_string(info) + ")");
  if (info < 0) throw NumericalError("dpotrf rejected its arguments");
  Matrix lower(n, n, std::move(f));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) lower(i, j) = 0.0;
  return lower;
}

Vector solve_spd(const Matrix& a, double ridge, std::span<const double> b) {
  if (b.size() != a.rows()) throw DataError("solve_spd: right-hand side length differs");
  for (double v : b)
    if (!std::isfinite(v)) throw NumericalError("right-hand side has non-finite entries");
  const Matrix lower = cholesky(a, ridge);
  const auto n = static_cast<lapack_int>(a.rows());
  Vector x(b.begin(), b.end());
  const lapack_int info =
      LAPACKE_dpotrs(LAPACK_ROW_MAJOR, 'L', n, 1, lower.data(), n, x.data(), 1);
  if (info != 0) throw NumericalError("dpotrs failed");
  return x;
}

}  // namespace treekta
