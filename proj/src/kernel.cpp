#include "treekta/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>

#include "treekta/error.hpp"
#include "treekta/parallel.hpp"

namespace treekta {

namespace {

void check_compatible(std::span<const Tree> trees, const Dataset& data) {
  if (trees.empty()) throw InvalidArgument("ensemble has no trees");
  for (const Tree& tree : trees) {
    if (tree.n_features() != data.p()) {
      throw DataError("dimension mismatch: ensemble expects " + std::to_string(tree.n_features()) +
                      " features, data has " + std::to_string(data.p()));
    }
  }
}

/// Rows grouped by leaf (counting sort, rows ascending inside a bucket).
/// bucket_start has leaf_count + 1 entries.
void bucket_rows(const Tree& tree, std::span<const std::uint32_t> leaves,
                 std::vector<std::uint32_t>& bucket_start, std::vector<std::uint32_t>& members) {
  bucket_start.assign(tree.leaf_count() + 1, 0);
  for (std::uint32_t leaf : leaves) ++bucket_start[leaf + 1];
  for (std::size_t b = 1; b < bucket_start.size(); ++b) bucket_start[b] += bucket_start[b - 1];
  members.resize(leaves.size());
  std::vector<std::uint32_t> cursor(bucket_start.begin(), bucket_start.end() - 1);
  for (std::uint32_t i = 0; i < leaves.size(); ++i) members[cursor[leaves[i]]++] = i;
}

std::vector<std::uint32_t> leaves_of(const Tree& tree, const Dataset& data) {
  std::vector<std::uint32_t> out(data.n());
  for (std::size_t i = 0; i < data.n(); ++i)
    out[i] = static_cast<std::uint32_t>(tree.leaf_of(data.row(i)));
  return out;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> leaf_assignments(std::span<const Tree> trees,
                                                          const Dataset& data) {
  check_compatible(trees, data);
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(trees.size());
  for (const Tree& tree : trees) out.push_back(leaves_of(tree, data));
  return out;
}

KernelMatrix kernel_matrix(std::span<const Tree> trees, const Dataset& data, unsigned threads) {
  check_compatible(trees, data);
  const std::size_t n = data.n();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), trees.size()));

  // Upper-triangle co-occurrence counts, one accumulator per worker.
  std::vector<std::vector<std::uint32_t>> counts(workers);
  parallel_for_slots(trees.size(), workers, [&](std::size_t m, unsigned slot) {
    auto& count = counts[slot];
    if (count.empty()) count.assign(n * n, 0);
    const auto leaves = leaves_of(trees[m], data);
    std::vector<std::uint32_t> start, members;
    bucket_rows(trees[m], leaves, start, members);
    for (std::size_t b = 0; b + 1 < start.size(); ++b) {
      for (std::uint32_t a = start[b]; a < start[b + 1]; ++a) {
        std::uint32_t* row = count.data() + static_cast<std::size_t>(members[a]) * n;
        for (std::uint32_t c = a; c < start[b + 1]; ++c) ++row[members[c]];
      }
    }
  });

  KernelMatrix k;
  k.m_trees = trees.size();
  k.values = Matrix(n, n);
  const auto m = static_cast<double>(trees.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::uint64_t c = 0;
      for (const auto& count : counts)
        if (!count.empty()) c += count[i * n + j];
      const double v = static_cast<double>(c) / m;
      k.values(i, j) = v;
      k.values(j, i) = v;
    }
  }
  return k;
}

CrossKernel cross_kernel(std::span<const Tree> trees, const Dataset& test, const Dataset& train,
                         unsigned threads) {
  check_compatible(trees, test);
  check_compatible(trees, train);
  const std::size_t n_test = test.n();
  const std::size_t n_train = train.n();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), trees.size()));

  std::vector<std::vector<std::uint32_t>> counts(workers);
  parallel_for_slots(trees.size(), workers, [&](std::size_t m, unsigned slot) {
    auto& count = counts[slot];
    if (count.empty()) count.assign(n_test * n_train, 0);
    const auto train_leaves = leaves_of(trees[m], train);
    std::vector<std::uint32_t> start, members;
    bucket_rows(trees[m], train_leaves, start, members);
    for (std::size_t t = 0; t < n_test; ++t) {
      const std::size_t leaf = trees[m].leaf_of(test.row(t));
      std::uint32_t* row = count.data() + t * n_train;
      for (std::uint32_t a = start[leaf]; a < start[leaf + 1]; ++a) ++row[members[a]];
    }
  });

  CrossKernel k;
  k.m_trees = trees.size();
  k.values = Matrix(n_test, n_train);
  const auto m = static_cast<double>(trees.size());
  for (std::size_t t = 0; t < n_test; ++t) {
    for (std::size_t j = 0; j < n_train; ++j) {
      std::uint64_t c = 0;
      for (const auto& count : counts)
        if (!count.empty()) c += count[t * n_train + j];
      k.values(t, j) = static_cast<double>(c) / m;
    }
  }
  return k;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<double> values;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t fields = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::size_t stop = comma == std::string::npos ? line.size() : comma;
      std::size_t a = pos, b = stop;
      while (a < b && line[a] == ' ') ++a;
      while (b > a && line[b - 1] == ' ') --b;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + a, line.data() + b, v);
      if (ec != std::errc() || ptr != line.data() + b || a == b) {
        throw DataError(path.string() + ": row " + std::to_string(rows + 1) + ", column " +
                        std::to_string(fields + 1) + ": not a number");
      }
      values.push_back(v);
      ++fields;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (rows == 0) cols = fields;
    if (fields != cols) {
      throw DataError(path.string() + ": row " + std::to_string(rows + 1) + " has " +
                      std::to_string(fields) + " columns, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw DataError(path.string() + ": empty matrix file");
  return Matrix(rows, cols, std::move(values));
}

}  // namespace treekta
