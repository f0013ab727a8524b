// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pmat/snippet.hpp"

namespace pmat {

/// One row of the JSON manifest:
///   {"snippets": [{"path", "infant_id", "session", "label", "snippet_id"}, ...]}
/// Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::filesystem::path path;
  std::string infant_id;
  Session session = Session::T1;
  Label label = Label::FmMinus;
  std::string snippet_id;
};

struct DatasetCounts {
  std::size_t snippets = 0;
  std::size_t fm_plus = 0;
  std::size_t fm_minus = 0;
  std::map<std::string, std::size_t> per_infant;
  std::map<Session, std::size_t> per_session;

  friend bool operator==(const DatasetCounts&, const DatasetCounts&) = default;
};

struct Dataset {
  std::filesystem::path source;
  std::vector<PressureSnippet> snippets;
  DatasetCounts counts;

  /// Distinct infant ids in sorted order.
  std::vector<std::string> infants() const;
};

DatasetCounts count_snippets(const std::vector<PressureSnippet>& snippets);
DatasetCounts count_entries(const std::vector<ManifestEntry>& entries);

/// Parses and validates a manifest: labels, sessions, unique snippet ids.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path);
void write_manifest(const std::filesystem::path& manifest_path, const std::vector<ManifestEntry>& entries);

/// Streams every snippet of a manifest through `visit`, one at a time, with the
/// identity fields filled from the manifest. The file label must agree with the
/// manifest label. Returns the recomputed counts.
DatasetCounts visit_dataset(const std::filesystem::path& manifest_path,
                            const std::function<void(PressureSnippet&&)>& visit);

Dataset load_dataset(const std::filesystem::path& manifest_path);

}  // namespace pmat
