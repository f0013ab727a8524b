// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "pmat/snippet.hpp"

namespace pmat {

// Crop window [1:29, 4:29] of the 32x32 grid, split after cropped row 12.
inline constexpr std::size_t kCropFirstRow = 1;
inline constexpr std::size_t kCropFirstCol = 4;
inline constexpr std::size_t kCropRows = 29;
inline constexpr std::size_t kCropCols = 26;
inline constexpr std::size_t kTopRows = 12;
inline constexpr std::size_t kBottomRows = 17;
inline constexpr std::size_t kSmoothingWindow = 5;

enum class Region { Top, Bottom };

/// One region of a cropped frame, promoted to reals. Indices are 1-based
/// within the region: i runs over rows (top to bottom), j over columns.
struct RegionGrid {
  Region region = Region::Top;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  ///< row-major

  double at(std::size_t i, std::size_t j) const { return values[(i - 1) * cols + (j - 1)]; }
};

struct SplitFrame {
  RegionGrid top;
  RegionGrid bottom;
};

SplitFrame crop_and_split(const PressureFrame& frame);

struct CenterOfPressure {
  double x = 0.0;  ///< pressure-weighted row index
  double y = 0.0;  ///< pressure-weighted column index
  double p = 0.0;  ///< mean pressure over the region
};

/// Zero total pressure yields the geometric center ((m+1)/2, (n+1)/2) and p = 0.
CenterOfPressure center_of_pressure(const RegionGrid& region);

/// Centered window, truncated at both ends; output has the input's length.
std::vector<double> moving_average(std::span<const double> signal, std::size_t window = kSmoothingWindow);

/// Channel order of the encoded signals.
enum Channel : std::size_t { XTop = 0, YTop, PTop, XBottom, YBottom, PBottom };
inline constexpr std::size_t kChannels = 6;
inline constexpr std::array<const char*, kChannels> kChannelNames{"x_t", "y_t", "p_t", "x_b", "y_b", "p_b"};

/// Smoothed, unnormalized per-frame signals. Position channels are stored
/// relative to `origin` (absolute = value + origin[channel]); the origin is the
/// first row/column holding any pressure in that region over the snippet, so
/// integer translations of a pattern give bit-identical channels. Pressure
/// channels have origin 0.
struct RawSignals {
  std::array<std::vector<double>, kChannels> channels;
  std::array<double, kChannels> origin{};
};

/// Per-frame CoP and mean pressure for both regions, before smoothing.
RawSignals frame_signals(const PressureSnippet& snippet);

/// frame_signals followed by per-channel moving_average.
RawSignals smoothed_signals(const PressureSnippet& snippet);

/// frames x 6 matrix of values in [0, 1], row-major by frame.
class MotionSignals {
 public:
  MotionSignals() = default;
  explicit MotionSignals(std::size_t frames) : frames_(frames), values_(frames * kChannels, 0.0) {}

  std::size_t frames() const { return frames_; }
  double operator()(std::size_t frame, std::size_t channel) const { return values_[frame * kChannels + channel]; }
  double& operator()(std::size_t frame, std::size_t channel) { return values_[frame * kChannels + channel]; }
  std::vector<double> channel(std::size_t c) const;
  std::span<const double> values() const { return values_; }

  friend bool operator==(const MotionSignals&, const MotionSignals&) = default;

 private:
  std::size_t frames_ = 0;
  std::vector<double> values_;
};

/// Min-max normalization: position channels share the largest position range,
/// pressure channels share the largest pressure range. A zero shared range
/// maps the group to zeros.
MotionSignals normalize(const RawSignals& raw);

/// Full pipeline: crop/split, CoP, smoothing, normalization.
MotionSignals encode(const PressureSnippet& snippet);

}  // namespace pmat
