// SPDX-License-Identifier: Apache-2.0
#include "pmat/binary_io.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <limits>

#include "pmat/common.hpp"

namespace pmat {

void write_u64_le(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t read_u64_le(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (in.gcount() != 8) throw Error("unexpected end of file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void write_f64_le(std::ostream& out, std::span<const double> values) {
  for (double d : values) write_u64_le(out, std::bit_cast<std::uint64_t>(d));
}

std::vector<double> read_f64_le(std::istream& in, std::size_t count) {
  std::vector<double> out(count);
  for (auto& d : out) d = std::bit_cast<double>(read_u64_le(in));
  return out;
}

void write_headered_blob(const std::filesystem::path& path, const HeaderedBlob& blob) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  const std::string header = blob.header.dump();
  write_u64_le(out, header.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  write_f64_le(out, blob.payload);
  if (!out) throw Error("write failed for " + path.string());
}

HeaderedBlob read_headered_blob(const std::filesystem::path& path, const std::string& payload_key) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::uint64_t header_size = read_u64_le(in);
  if (header_size > (1u << 26)) throw Error(path.string() + ": implausible header length");
  std::string header(header_size, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_size));
  if (static_cast<std::uint64_t>(in.gcount()) != header_size) throw Error(path.string() + ": truncated header");
  HeaderedBlob blob;
  blob.header = nlohmann::json::parse(header);
  blob.payload = read_f64_le(in, blob.header.at(payload_key).get<std::size_t>());
  if (in.peek() != std::char_traits<char>::eof()) throw Error(path.string() + ": trailing bytes");
  return blob;
}

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace pmat
