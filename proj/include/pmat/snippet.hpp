// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pmat/common.hpp"

namespace pmat {

/// One 32x32 sensor frame, row-major, raw 8-bit device units.
using PressureFrame = std::array<std::uint8_t, kGridCells>;

/// Value at 1-based (row, col).
inline std::uint8_t cell(const PressureFrame& frame, std::size_t row, std::size_t col) {
  return frame[(row - 1) * kGridCols + (col - 1)];
}
inline std::uint8_t& cell(PressureFrame& frame, std::size_t row, std::size_t col) {
  return frame[(row - 1) * kGridCols + (col - 1)];
}

/// One labelled 5 s recording. The canonical file carries frames and label;
/// identity fields come from the dataset manifest.
struct PressureSnippet {
  std::vector<PressureFrame> frames;
  Label label = Label::FmMinus;
  std::string infant_id;
  Session session = Session::T1;
  std::string snippet_id;

  friend bool operator==(const PressureSnippet&, const PressureSnippet&) = default;
};

/// Throws SnippetFormatError(InvalidSnippet) if the frame count is not 500.
void validate(const PressureSnippet& snippet);

enum class SnippetErrorKind {
  Io,
  BadMagic,
  BadVersion,
  BadShape,
  BadFrameCount,
  BadLabel,
  TruncatedHeader,
  TruncatedPayload,
  TrailingData,
  InvalidSnippet,
};

std::string_view to_string(SnippetErrorKind kind);

class SnippetFormatError : public Error {
 public:
  SnippetFormatError(SnippetErrorKind kind, const std::string& detail);
  SnippetErrorKind kind() const { return kind_; }

 private:
  SnippetErrorKind kind_;
};

// Canonical "PMAT" container, version 1:
//   0  magic "PMAT"
//   4  u16 LE version = 1
//   6  u16 LE frame_count = 500
//   8  u8 rows = 32, u8 cols = 32
//  10  u8 label (0 = FM-, 1 = FM+)
//  11  21 zero bytes
//  32  frame_count * rows * cols u8, frame-major, row-major within a frame
inline constexpr std::size_t kSnippetHeaderBytes = 32;
inline constexpr std::uint16_t kSnippetFormatVersion = 1;

void write_snippet(const PressureSnippet& snippet, std::ostream& out);
void write_snippet_file(const PressureSnippet& snippet, const std::filesystem::path& path);

PressureSnippet read_snippet(std::istream& in);
PressureSnippet read_snippet_file(const std::filesystem::path& path);

/// Parses the CSV import layout: 500 rows of 1024 integers (0..255), no header.
/// Errors name the offending 1-based row.
std::vector<PressureFrame> import_csv_frames(std::istream& in, std::string_view source_name);

}  // namespace pmat
