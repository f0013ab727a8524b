// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "pmat/rng.hpp"
#include "pmat/snippet.hpp"
#include "support.hpp"

namespace pmat::test {

/// A moving pattern confined to rows 3..9, cols 8..20 of the top region and
/// rows 16..24, cols 9..22 of the bottom region (1-based grid coordinates).
/// Values are even and at most 36, so scaling by 0.5, 2 or 7 stays exact in
/// 8 bits, and shifts of up to one row or six columns stay inside a region.
inline PressureSnippet quantizable_snippet(std::uint64_t seed) {
  Rng rng(seed);
  auto s = zero_snippet();
  for (std::size_t t = 0; t < kSnippetFrames; ++t) {
    const std::size_t dr = t / 50 % 3;
    const std::size_t dc = t / 25 % 4;
    for (int k = 0; k < 6; ++k) {
      cell(s.frames[t], 3 + dr + rng.below(5), 8 + dc + rng.below(10)) = static_cast<std::uint8_t>(2 * (1 + rng.below(18)));
      cell(s.frames[t], 16 + dr + rng.below(7), 9 + dc + rng.below(11)) = static_cast<std::uint8_t>(2 * (1 + rng.below(18)));
    }
  }
  return s;
}

inline PressureSnippet scaled(const PressureSnippet& s, double k) {
  auto out = s;
  for (auto& f : out.frames) {
    for (auto& v : f) v = static_cast<std::uint8_t>(std::lround(v * k));
  }
  return out;
}

inline PressureSnippet shifted(const PressureSnippet& s, int dr, int dc) {
  auto out = s;
  for (std::size_t t = 0; t < s.frames.size(); ++t) {
    out.frames[t].fill(0);
    for (std::size_t r = 1; r <= kGridRows; ++r) {
      for (std::size_t c = 1; c <= kGridCols; ++c) {
        const auto v = cell(s.frames[t], r, c);
        if (v) cell(out.frames[t], r + dr, c + dc) = v;
      }
    }
  }
  return out;
}

/// (row shift, column shift) pairs used by the translation checks.
inline constexpr std::pair<int, int> kShifts[] = {{0, 3}, {1, -4}, {0, 6}, {1, 0}};

}  // namespace pmat::test
