#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace treekta {

// The standard distributions are implementation-defined, so the draws below
// are spelled out on top of mt19937_64 to keep seeded output identical across
// standard libraries.
using Rng = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for stream `index` of a run keyed by `master`. Independent of thread
/// scheduling: a pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Uniform integer in [0, bound). bound must be positive.
std::size_t uniform_index(Rng& rng, std::size_t bound);

/// Standard normal draw (Marsaglia polar method, one value per call).
double standard_normal(Rng& rng);

/// `k` distinct values from [0, n), uniformly, in draw order.
std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t k);

}  // namespace treekta
