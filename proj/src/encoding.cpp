// SPDX-License-Identifier: Apache-2.0
#include "pmat/encoding.hpp"

#include <algorithm>

namespace pmat {

SplitFrame crop_and_split(const PressureFrame& frame) {
  SplitFrame out;
  out.top = {Region::Top, kTopRows, kCropCols, std::vector<double>(kTopRows * kCropCols)};
  out.bottom = {Region::Bottom, kBottomRows, kCropCols, std::vector<double>(kBottomRows * kCropCols)};
  for (std::size_t r = 0; r < kCropRows; ++r) {
    auto& target = r < kTopRows ? out.top : out.bottom;
    const std::size_t local_row = r < kTopRows ? r : r - kTopRows;
    for (std::size_t c = 0; c < kCropCols; ++c) {
      target.values[local_row * kCropCols + c] = cell(frame, kCropFirstRow + r, kCropFirstCol + c);
    }
  }
  return out;
}

CenterOfPressure center_of_pressure(const RegionGrid& region) {
  double total = 0.0, row_moment = 0.0, col_moment = 0.0;
  for (std::size_t i = 1; i <= region.rows; ++i) {
    for (std::size_t j = 1; j <= region.cols; ++j) {
      const double v = region.at(i, j);
      total += v;
      row_moment += static_cast<double>(i) * v;
      col_moment += static_cast<double>(j) * v;
    }
  }
  const double cells = static_cast<double>(region.rows * region.cols);
  if (total == 0.0) {
    return {(static_cast<double>(region.rows) + 1.0) / 2.0, (static_cast<double>(region.cols) + 1.0) / 2.0, 0.0};
  }
  return {row_moment / total, col_moment / total, total / cells};
}

std::vector<double> moving_average(std::span<const double> signal, std::size_t window) {
  const std::size_t n = signal.size();
  const std::size_t half = window / 2;
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t >= half ? t - half : 0;
    const std::size_t hi = std::min(n - 1, t + half);
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += signal[k];
    out[t] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<double> MotionSignals::channel(std::size_t c) const {
  std::vector<double> out(frames_);
  for (std::size_t t = 0; t < frames_; ++t) out[t] = (*this)(t, c);
  return out;
}

namespace {

struct RegionMoments {
  // Integer-valued sums are exact in double for 8-bit inputs on these grids.
  double total = 0.0;
  double row_moment = 0.0;  // sum of (i - row_origin) * v
  double col_moment = 0.0;  // sum of (j - col_origin) * v
};

// First 1-based row / column holding pressure in rows [first_row, first_row+rows)
// of the crop across every frame; 0 if the region is empty throughout.
std::pair<std::size_t, std::size_t> region_origin(const PressureSnippet& s, std::size_t first_row,
                                                  std::size_t rows) {
  std::size_t min_i = 0, min_j = 0;
  for (const auto& frame : s.frames) {
    for (std::size_t i = 1; i <= rows; ++i) {
      for (std::size_t j = 1; j <= kCropCols; ++j) {
        if (cell(frame, first_row + i - 1, kCropFirstCol + j - 1) == 0) continue;
        if (min_i == 0 || i < min_i) min_i = i;
        if (min_j == 0 || j < min_j) min_j = j;
      }
    }
  }
  return {min_i, min_j};
}

}  // namespace

RawSignals frame_signals(const PressureSnippet& snippet) {
  validate(snippet);
  RawSignals raw;
  for (auto& ch : raw.channels) ch.resize(snippet.frames.size());

  struct RegionLayout {
    std::size_t first_row, rows, x, y, p;
  };
  const std::array<RegionLayout, 2> layout{{{kCropFirstRow, kTopRows, XTop, YTop, PTop},
                                            {kCropFirstRow + kTopRows, kBottomRows, XBottom, YBottom, PBottom}}};

  for (const auto& reg : layout) {
    const auto [oi, oj] = region_origin(snippet, reg.first_row, reg.rows);
    raw.origin[reg.x] = static_cast<double>(oi);
    raw.origin[reg.y] = static_cast<double>(oj);
    const double cells = static_cast<double>(reg.rows * kCropCols);
    for (std::size_t f = 0; f < snippet.frames.size(); ++f) {
      const auto& frame = snippet.frames[f];
      RegionMoments m;
      for (std::size_t i = 1; i <= reg.rows; ++i) {
        const double di = static_cast<double>(i) - static_cast<double>(oi);
        for (std::size_t j = 1; j <= kCropCols; ++j) {
          const double v = cell(frame, reg.first_row + i - 1, kCropFirstCol + j - 1);
          m.total += v;
          m.row_moment += di * v;
          m.col_moment += (static_cast<double>(j) - static_cast<double>(oj)) * v;
        }
      }
      if (m.total == 0.0) {
        raw.channels[reg.x][f] = (static_cast<double>(reg.rows) + 1.0) / 2.0 - static_cast<double>(oi);
        raw.channels[reg.y][f] = (static_cast<double>(kCropCols) + 1.0) / 2.0 - static_cast<double>(oj);
        raw.channels[reg.p][f] = 0.0;
      } else {
        raw.channels[reg.x][f] = m.row_moment / m.total;
        raw.channels[reg.y][f] = m.col_moment / m.total;
        raw.channels[reg.p][f] = m.total / cells;
      }
    }
  }
  return raw;
}

RawSignals smoothed_signals(const PressureSnippet& snippet) {
  RawSignals raw = frame_signals(snippet);
  for (auto& ch : raw.channels) ch = moving_average(ch);
  return raw;
}

MotionSignals normalize(const RawSignals& raw) {
  const std::size_t n = raw.channels[0].size();
  for (const auto& ch : raw.channels) {
    if (ch.size() != n) throw Error("normalize: channels differ in length");
  }
  std::array<double, kChannels> lo{}, range{};
  for (std::size_t c = 0; c < kChannels; ++c) {
    if (n == 0) continue;
    const auto [mn, mx] = std::minmax_element(raw.channels[c].begin(), raw.channels[c].end());
    lo[c] = *mn;
    range[c] = *mx - *mn;
  }
  const double position_scale = std::max({range[XTop], range[XBottom], range[YTop], range[YBottom]});
  const double pressure_scale = std::max(range[PTop], range[PBottom]);

  MotionSignals out(n);
  for (std::size_t c = 0; c < kChannels; ++c) {
    const bool pressure = c == PTop || c == PBottom;
    const double scale = pressure ? pressure_scale : position_scale;
    if (scale == 0.0) continue;
    for (std::size_t t = 0; t < n; ++t) out(t, c) = (raw.channels[c][t] - lo[c]) / scale;
  }
  return out;
}

MotionSignals encode(const PressureSnippet& snippet) { return normalize(smoothed_signals(snippet)); }

}  // namespace pmat
