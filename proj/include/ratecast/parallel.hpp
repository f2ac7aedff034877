#pragma once

/**
 * Control over the library's worker pool.
 *
 * Batch computations (stochastic candidate scoring, per-stock score
 * matrices) fan work out over a small fixed pool.  Results are always
 * written into index-addressed slots and reduced sequentially, so every
 * result is bitwise identical for any pool size -- the pool only changes
 * wall-clock time.
 */

#include <cstddef>
#include <functional>

namespace ratecast {

/**
 * Number of worker threads used for batch work.  Defaults to the
 * RATECAST_THREADS environment variable if set to a positive integer,
 * otherwise to the hardware concurrency (at least 1).
 */
std::size_t thread_count();

/// Override the pool size (n >= 1; DomainError otherwise).  Takes effect for
/// subsequent batch calls; existing workers are retired first.
void set_thread_count(std::size_t n);

/**
 * Run fn(0), ..., fn(count-1) across the worker pool.  Iterations must be
 * independent; for results that do not depend on the pool size, have fn
 * write only to its own index-addressed slot and reduce sequentially
 * afterwards.  The first exception thrown by any iteration is rethrown once
 * every worker has finished.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ratecast
