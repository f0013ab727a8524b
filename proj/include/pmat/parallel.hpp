// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace pmat {

/// Runs fn(0..count-1) on up to `jobs` threads. Each index runs exactly once;
/// callers write results into per-index slots so the outcome does not depend
/// on scheduling. If any call throws, the exception of the lowest failing
/// index is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace pmat
