#pragma once

#include <cstddef>
#include <functional>

namespace treekta {

/// Resolves a requested worker count: 0 means "all hardware threads".
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Indices are
/// handed out dynamically; body must only write to state owned by index i
/// (or by the worker slot it is given in the two-argument form).
/// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

/// Same, but body also receives the worker slot in [0, threads) so callers can
/// keep per-worker accumulators.
void parallel_for_slots(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t index, unsigned slot)>& body);

}  // namespace treekta
