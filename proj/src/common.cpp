// SPDX-License-Identifier: Apache-2.0
#include "pmat/common.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace pmat {

std::string_view to_string(Label label) {
  return label == Label::FmPlus ? "FM+" : "FM-";
}

std::string_view to_string(Session session) {
  switch (session) {
    case Session::T1: return "T1";
    case Session::T5: return "T5";
    case Session::T6: return "T6";
    case Session::T7: return "T7";
  }
  return "T1";
}

Label parse_label(std::string_view text) {
  if (text == "FM+") return Label::FmPlus;
  if (text == "FM-" || text == "FM−") return Label::FmMinus;
  throw Error("label outside {FM+, FM-}: '" + std::string(text) + "'");
}

Session parse_session(std::string_view text) {
  if (text == "T1") return Session::T1;
  if (text == "T5") return Session::T5;
  if (text == "T6") return Session::T6;
  if (text == "T7") return Session::T7;
  throw Error("session outside {T1, T5, T6, T7}: '" + std::string(text) + "'");
}

std::string format_fixed(double value, int precision) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", precision, value);
  return buf.data();
}

std::string format_exact(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), res.ptr};
}

}  // namespace pmat
