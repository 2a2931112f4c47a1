#pragma once

#include <cstddef>
#include <functional>

namespace lreaudit {

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Each index runs
/// exactly once; callers write into per-index slots so results do not depend
/// on scheduling. The first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

/// std::thread::hardware_concurrency(), at least 1.
unsigned default_jobs();

}  // namespace lreaudit
