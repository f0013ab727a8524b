// SPDX-License-Identifier: Apache-2.0
#include "pmat/snippet.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace pmat {

namespace {

constexpr std::array<char, 4> kMagic{'P', 'M', 'A', 'T'};

std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

std::string_view to_string(SnippetErrorKind kind) {
  switch (kind) {
    case SnippetErrorKind::Io: return "I/O failure";
    case SnippetErrorKind::BadMagic: return "bad magic";
    case SnippetErrorKind::BadVersion: return "wrong version";
    case SnippetErrorKind::BadShape: return "bad grid shape";
    case SnippetErrorKind::BadFrameCount: return "frame count != 500";
    case SnippetErrorKind::BadLabel: return "bad label";
    case SnippetErrorKind::TruncatedHeader: return "truncated header";
    case SnippetErrorKind::TruncatedPayload: return "truncated payload";
    case SnippetErrorKind::TrailingData: return "trailing data";
    case SnippetErrorKind::InvalidSnippet: return "invalid snippet";
  }
  return "unknown";
}

SnippetFormatError::SnippetFormatError(SnippetErrorKind kind, const std::string& detail)
    : Error(std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail)), kind_(kind) {}

void validate(const PressureSnippet& snippet) {
  if (snippet.frames.size() != kSnippetFrames) {
    throw SnippetFormatError(SnippetErrorKind::InvalidSnippet,
                             "expected 500 frames, got " + std::to_string(snippet.frames.size()));
  }
}

void write_snippet(const PressureSnippet& snippet, std::ostream& out) {
  validate(snippet);
  std::array<unsigned char, kSnippetHeaderBytes> header{};
  for (std::size_t i = 0; i < kMagic.size(); ++i) header[i] = static_cast<unsigned char>(kMagic[i]);
  header[4] = kSnippetFormatVersion & 0xff;
  header[5] = kSnippetFormatVersion >> 8;
  header[6] = kSnippetFrames & 0xff;
  header[7] = (kSnippetFrames >> 8) & 0xff;
  header[8] = kGridRows;
  header[9] = kGridCols;
  header[10] = static_cast<unsigned char>(snippet.label);
  out.write(reinterpret_cast<const char*>(header.data()), header.size());
  for (const auto& frame : snippet.frames) {
    out.write(reinterpret_cast<const char*>(frame.data()), frame.size());
  }
  if (!out) throw SnippetFormatError(SnippetErrorKind::Io, "write failed");
}

void write_snippet_file(const PressureSnippet& snippet, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnippetFormatError(SnippetErrorKind::Io, "cannot open " + path.string());
  write_snippet(snippet, out);
  out.flush();
  if (!out) throw SnippetFormatError(SnippetErrorKind::Io, "write failed for " + path.string());
}

PressureSnippet read_snippet(std::istream& in) {
  std::array<unsigned char, kSnippetHeaderBytes> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got >= kMagic.size()) {
    for (std::size_t i = 0; i < kMagic.size(); ++i) {
      if (header[i] != static_cast<unsigned char>(kMagic[i])) {
        throw SnippetFormatError(SnippetErrorKind::BadMagic, "");
      }
    }
  }
  if (got < header.size()) {
    throw SnippetFormatError(SnippetErrorKind::TruncatedHeader,
                             std::to_string(got) + " of 32 header bytes");
  }
  const std::uint16_t version = read_u16le(&header[4]);
  if (version != kSnippetFormatVersion) {
    throw SnippetFormatError(SnippetErrorKind::BadVersion, "version " + std::to_string(version));
  }
  if (header[8] != kGridRows || header[9] != kGridCols) {
    throw SnippetFormatError(SnippetErrorKind::BadShape, std::to_string(header[8]) + "x" +
                                                             std::to_string(header[9]));
  }
  const std::uint16_t frame_count = read_u16le(&header[6]);
  if (frame_count != kSnippetFrames) {
    throw SnippetFormatError(SnippetErrorKind::BadFrameCount, std::to_string(frame_count));
  }
  if (header[10] > 1) {
    throw SnippetFormatError(SnippetErrorKind::BadLabel, std::to_string(header[10]));
  }

  PressureSnippet snippet;
  snippet.label = static_cast<Label>(header[10]);
  snippet.frames.resize(frame_count);
  for (std::size_t f = 0; f < frame_count; ++f) {
    auto& frame = snippet.frames[f];
    in.read(reinterpret_cast<char*>(frame.data()), frame.size());
    if (static_cast<std::size_t>(in.gcount()) != frame.size()) {
      throw SnippetFormatError(SnippetErrorKind::TruncatedPayload,
                               "frame " + std::to_string(f) + " incomplete");
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw SnippetFormatError(SnippetErrorKind::TrailingData, "");
  }
  return snippet;
}

PressureSnippet read_snippet_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnippetFormatError(SnippetErrorKind::Io, "cannot open " + path.string());
  try {
    return read_snippet(in);
  } catch (const SnippetFormatError& e) {
    throw SnippetFormatError(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<PressureFrame> import_csv_frames(std::istream& in, std::string_view source_name) {
  std::vector<PressureFrame> frames;
  std::string line;
  std::size_t row = 0;
  const auto fail = [&](const std::string& why) {
    throw Error(std::string(source_name) + ": row " + std::to_string(row) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) fail("empty row");
    PressureFrame frame{};
    std::size_t column = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (true) {
      while (p < end && *p == ' ') ++p;
      int value = 0;
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc{}) fail("column " + std::to_string(column + 1) + " is not an integer");
      if (value < 0 || value > 255) {
        fail("column " + std::to_string(column + 1) + " value " + std::to_string(value) +
             " outside 0..255");
      }
      if (column >= kGridCells) fail("more than 1024 columns");
      frame[column++] = static_cast<std::uint8_t>(value);
      p = next;
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      if (*p != ',') fail("unexpected character after column " + std::to_string(column));
      ++p;
    }
    if (column != kGridCells) fail("expected 1024 columns, got " + std::to_string(column));
    frames.push_back(frame);
  }
  if (frames.size() != kSnippetFrames) {
    row = frames.size();
    throw Error(std::string(source_name) + ": expected 500 rows, got " + std::to_string(frames.size()));
  }
  return frames;
}

}  // namespace pmat
