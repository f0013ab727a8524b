// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace pmat {

void write_u64_le(std::ostream& out, std::uint64_t v);
std::uint64_t read_u64_le(std::istream& in);
void write_f64_le(std::ostream& out, std::span<const double> values);
std::vector<double> read_f64_le(std::istream& in, std::size_t count);

/// Container used for trained models: u64 LE header length, UTF-8 JSON
/// header, then a flat little-endian float64 payload.
struct HeaderedBlob {
  nlohmann::json header;
  std::vector<double> payload;
};

void write_headered_blob(const std::filesystem::path& path, const HeaderedBlob& blob);
/// `payload_key` names the header field that holds the payload length.
HeaderedBlob read_headered_blob(const std::filesystem::path& path, const std::string& payload_key);

/// JSON cannot carry inf/nan; they are stored as strings.
nlohmann::json json_number(double v);
double number_from_json(const nlohmann::json& j);

}  // namespace pmat
