// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmat/rng.hpp"
#include "pmat/snippet.hpp"

namespace pmat::verify {

/// Snippet number `index` of a reproducible random corpus: even indices are
/// moving blobs with random placement and noise, odd indices are sparse
/// random speckle that leaves some frames (and sometimes a whole region)
/// empty.
PressureSnippet random_snippet(std::uint64_t seed, std::size_t index);

struct GroupResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t seed = 2024;
  /// Test hook: scales analytic gradients in the gradient group.
  double gradient_fault = 1.0;
};

/// Groups: encoding, gradients, metrics, svm.
std::vector<GroupResult> run_selftest(const SelftestOptions& options = {});

}  // namespace pmat::verify
