// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pmat {

inline constexpr std::size_t kGridRows = 32;
inline constexpr std::size_t kGridCols = 32;
inline constexpr std::size_t kGridCells = kGridRows * kGridCols;
inline constexpr std::size_t kSnippetFrames = 500;
inline constexpr double kSampleRateHz = 100.0;

/// Binary class of a snippet. FM+ is the positive class everywhere.
enum class Label : std::uint8_t { FmMinus = 0, FmPlus = 1 };

/// Recording session. T1 is pre-fidgety, T5..T7 fidgety.
enum class Session : std::uint8_t { T1, T5, T6, T7 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view to_string(Label label);
std::string_view to_string(Session session);

/// Accepts "FM+", "FM-" and "FM−" (unicode minus).
Label parse_label(std::string_view text);
Session parse_session(std::string_view text);

inline double label_value(Label label) { return label == Label::FmPlus ? 1.0 : 0.0; }

/// printf-style "%.{precision}f".
std::string format_fixed(double value, int precision);

/// Shortest text that parses back to the same double.
std::string format_exact(double value);

}  // namespace pmat
