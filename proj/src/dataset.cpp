// SPDX-License-Identifier: Apache-2.0
#include "pmat/dataset.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace pmat {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> Dataset::infants() const {
  std::vector<std::string> out;
  out.reserve(counts.per_infant.size());
  for (const auto& [id, n] : counts.per_infant) out.push_back(id);
  return out;
}

namespace {

template <class Range, class Fn>
DatasetCounts count_with(const Range& items, Fn&& fields) {
  DatasetCounts c;
  for (const auto& item : items) {
    const auto [label, infant, session] = fields(item);
    ++c.snippets;
    (label == Label::FmPlus ? c.fm_plus : c.fm_minus) += 1;
    ++c.per_infant[infant];
    ++c.per_session[session];
  }
  return c;
}

std::string require_string(const json& row, const char* key, std::size_t index) {
  if (!row.contains(key) || !row[key].is_string()) {
    throw Error("manifest entry " + std::to_string(index) + ": missing string field '" + key + "'");
  }
  return row[key].get<std::string>();
}

}  // namespace

DatasetCounts count_snippets(const std::vector<PressureSnippet>& snippets) {
  return count_with(snippets, [](const PressureSnippet& s) {
    return std::tuple{s.label, s.infant_id, s.session};
  });
}

DatasetCounts count_entries(const std::vector<ManifestEntry>& entries) {
  return count_with(entries, [](const ManifestEntry& e) {
    return std::tuple{e.label, e.infant_id, e.session};
  });
}

std::vector<ManifestEntry> read_manifest(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open manifest " + manifest_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error("manifest " + manifest_path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("snippets") || !doc["snippets"].is_array()) {
    throw Error("manifest " + manifest_path.string() + " lacks a \"snippets\" array");
  }
  const fs::path base = manifest_path.parent_path();
  std::vector<ManifestEntry> entries;
  std::set<std::string> seen;
  std::size_t index = 0;
  for (const auto& row : doc["snippets"]) {
    ManifestEntry e;
    fs::path p = require_string(row, "path", index);
    e.path = p.is_absolute() ? p : base / p;
    e.infant_id = require_string(row, "infant_id", index);
    e.session = parse_session(require_string(row, "session", index));
    e.label = parse_label(require_string(row, "label", index));
    e.snippet_id = require_string(row, "snippet_id", index);
    if (!seen.insert(e.snippet_id).second) {
      throw Error("duplicate snippet_id '" + e.snippet_id + "' in manifest");
    }
    entries.push_back(std::move(e));
    ++index;
  }
  return entries;
}

void write_manifest(const fs::path& manifest_path, const std::vector<ManifestEntry>& entries) {
  const fs::path base = manifest_path.parent_path();
  json rows = json::array();
  for (const auto& e : entries) {
    fs::path p = e.path;
    if (!base.empty() && p.is_absolute() == base.is_absolute()) p = p.lexically_relative(base);
    rows.push_back({{"path", p.generic_string()},
                    {"infant_id", e.infant_id},
                    {"session", std::string(to_string(e.session))},
                    {"label", std::string(to_string(e.label))},
                    {"snippet_id", e.snippet_id}});
  }
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw Error("cannot write manifest " + manifest_path.string());
  out << json{{"snippets", rows}}.dump(2) << '\n';
  if (!out) throw Error("write failed for manifest " + manifest_path.string());
}

DatasetCounts visit_dataset(const fs::path& manifest_path,
                            const std::function<void(PressureSnippet&&)>& visit) {
  const auto entries = read_manifest(manifest_path);
  for (const auto& e : entries) {
    if (!fs::exists(e.path)) throw Error("missing snippet file " + e.path.string());
    PressureSnippet s = read_snippet_file(e.path);
    if (s.label != e.label) {
      throw Error("label mismatch for " + e.snippet_id + ": manifest " +
                  std::string(to_string(e.label)) + ", file " + std::string(to_string(s.label)));
    }
    s.infant_id = e.infant_id;
    s.session = e.session;
    s.snippet_id = e.snippet_id;
    visit(std::move(s));
  }
  return count_entries(entries);
}

Dataset load_dataset(const fs::path& manifest_path) {
  Dataset ds;
  ds.source = manifest_path;
  const DatasetCounts manifest_counts =
      visit_dataset(manifest_path, [&](PressureSnippet&& s) { ds.snippets.push_back(std::move(s)); });
  ds.counts = count_snippets(ds.snippets);
  if (!(ds.counts == manifest_counts)) throw Error("manifest counts disagree with loaded snippets");
  return ds;
}

}  // namespace pmat
