#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "treekta/dataset.hpp"
#include "treekta/gbt.hpp"
#include "treekta/matrix.hpp"
#include "treekta/rf.hpp"
#include "treekta/tree.hpp"

namespace treekta {

/// Train x train leaf co-occurrence kernel: K[i][j] is the fraction of trees
/// in which rows i and j reach the same leaf.
struct KernelMatrix {
  Matrix values;
  std::size_t m_trees = 0;

  std::size_t n() const { return values.rows(); }
};

/// Test x train co-occurrence fractions.
struct CrossKernel {
  Matrix values;
  std::size_t m_trees = 0;
};

/// leaves[m][i] = leaf reached by row i in tree m.
std::vector<std::vector<std::uint32_t>> leaf_assignments(std::span<const Tree> trees,
                                                          const Dataset& data);

KernelMatrix kernel_matrix(std::span<const Tree> trees, const Dataset& data, unsigned threads = 1);
inline KernelMatrix kernel_matrix(const RandomForest& forest, const Dataset& data,
                                  unsigned threads = 1) {
  return kernel_matrix(forest.trees, data, threads);
}
/// Every boosting round counts equally, whatever its weight in the predictor.
inline KernelMatrix kernel_matrix(const GbtModel& model, const Dataset& data, unsigned threads = 1) {
  return kernel_matrix(model.trees, data, threads);
}

CrossKernel cross_kernel(std::span<const Tree> trees, const Dataset& test, const Dataset& train,
                         unsigned threads = 1);
inline CrossKernel cross_kernel(const RandomForest& forest, const Dataset& test,
                                const Dataset& train, unsigned threads = 1) {
  return cross_kernel(forest.trees, test, train, threads);
}
inline CrossKernel cross_kernel(const GbtModel& model, const Dataset& test, const Dataset& train,
                                unsigned threads = 1) {
  return cross_kernel(model.trees, test, train, threads);
}

/// Headerless CSV, one matrix row per line, 17 significant digits.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_csv(const std::filesystem::path& path);

}  // namespace treekta
