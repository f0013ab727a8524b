// SPDX-License-Identifier: Apache-2.0
#include "pmat/verify/encoding_oracle.hpp"

#include <array>
#include <vector>

namespace pmat::verify {

MotionSignals brute_force_encode(const PressureSnippet& snippet) {
  using Real = long double;
  const std::size_t frames = snippet.frames.size();
  // 0-based grid rows 0..11 form the top region and 12..28 the bottom one;
  // columns 3..28 are kept.
  struct Box {
    std::size_t row0, row1;
  };
  const std::array<Box, 2> boxes{{{0, 11}, {12, 28}}};
  constexpr std::size_t col0 = 3, col1 = 28;

  std::array<std::vector<Real>, 6> raw;
  for (auto& r : raw) r.assign(frames, 0.0L);
  for (std::size_t f = 0; f < frames; ++f) {
    const auto& grid = snippet.frames[f];
    for (std::size_t b = 0; b < 2; ++b) {
      const Box box = boxes[b];
      Real mass = 0, sx = 0, sy = 0;
      for (std::size_t r = box.row0; r <= box.row1; ++r) {
        for (std::size_t c = col0; c <= col1; ++c) {
          const Real v = grid[r * 32 + c];
          mass += v;
          sx += v * static_cast<Real>(r - box.row0 + 1);
          sy += v * static_cast<Real>(c - col0 + 1);
        }
      }
      const Real m = static_cast<Real>(box.row1 - box.row0 + 1);
      const Real n = static_cast<Real>(col1 - col0 + 1);
      if (mass == 0) {
        raw[3 * b][f] = (m + 1) / 2;
        raw[3 * b + 1][f] = (n + 1) / 2;
        raw[3 * b + 2][f] = 0;
      } else {
        raw[3 * b][f] = sx / mass;
        raw[3 * b + 1][f] = sy / mass;
        raw[3 * b + 2][f] = mass / (m * n);
      }
    }
  }

  std::array<std::vector<Real>, 6> smooth;
  for (std::size_t ch = 0; ch < 6; ++ch) {
    smooth[ch].assign(frames, 0.0L);
    for (std::size_t t = 0; t < frames; ++t) {
      Real sum = 0;
      int count = 0;
      for (long k = static_cast<long>(t) - 2; k <= static_cast<long>(t) + 2; ++k) {
        if (k < 0 || k >= static_cast<long>(frames)) continue;
        sum += raw[ch][static_cast<std::size_t>(k)];
        ++count;
      }
      smooth[ch][t] = sum / count;
    }
  }

  std::array<Real, 6> lo{}, hi{};
  for (std::size_t ch = 0; ch < 6; ++ch) {
    lo[ch] = hi[ch] = frames ? smooth[ch][0] : 0;
    for (Real v : smooth[ch]) {
      if (v < lo[ch]) lo[ch] = v;
      if (v > hi[ch]) hi[ch] = v;
    }
  }
  Real pos_range = 0, pres_range = 0;
  for (std::size_t ch : {0u, 1u, 3u, 4u}) {
    if (hi[ch] - lo[ch] > pos_range) pos_range = hi[ch] - lo[ch];
  }
  for (std::size_t ch : {2u, 5u}) {
    if (hi[ch] - lo[ch] > pres_range) pres_range = hi[ch] - lo[ch];
  }

  MotionSignals out(frames);
  for (std::size_t ch = 0; ch < 6; ++ch) {
    const Real range = (ch == 2 || ch == 5) ? pres_range : pos_range;
    for (std::size_t t = 0; t < frames; ++t) {
      out(t, ch) = range == 0 ? 0.0 : static_cast<double>((smooth[ch][t] - lo[ch]) / range);
    }
  }
  return out;
}

}  // namespace pmat::verify
