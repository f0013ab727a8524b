// SPDX-License-Identifier: Apache-2.0
#include "pmat/eval/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "pmat/binary_io.hpp"
#include "pmat/models/catalog.hpp"

namespace pmat::eval {

namespace {

constexpr const char* kUndefined = "n/a";

std::string percent(const std::optional<double>& v) { return v ? format_fixed(100.0 * *v, 2) : kUndefined; }

std::string csv_field(const std::optional<double>& v) { return v ? format_exact(*v) : ""; }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::size_t rank_of(const std::string& arch) {
  const auto& cat = models::catalog();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (cat[i].name == arch) return i;
  }
  return cat.size();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> parse_optional(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw Error("report CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

std::string format_summary(const MetricSummary& s) {
  std::string out = percent(s.mean) + " [";
  if (s.ci) {
    out += percent(s.ci->low) + " " + percent(s.ci->high);
  } else {
    out += kUndefined;
  }
  return out + "]";
}

std::vector<const CvReport*> ordered(std::span<const CvReport> reports) {
  std::vector<const CvReport*> out;
  for (const auto& r : reports) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(),
                   [](const CvReport* a, const CvReport* b) { return rank_of(a->arch) < rank_of(b->arch); });
  return out;
}

ComparisonMatrix compare(std::span<const CvReport> reports, TTestMode mode) {
  const auto rows = ordered(reports);
  ComparisonMatrix m;
  m.mode = mode;
  for (const auto* r : rows) m.arch.push_back(r->arch);
  m.p.assign(rows.size(), std::vector<std::optional<double>>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      const auto& a = rows[i]->balanced_accuracy;
      const auto& b = rows[j]->balanced_accuracy;
      std::vector<double> va, vb;
      if (mode == TTestMode::Paired) {
        if (a.folds.size() != b.folds.size()) continue;
        for (std::size_t k = 0; k < a.folds.size(); ++k) {
          if (a.folds[k] && b.folds[k]) {
            va.push_back(*a.folds[k]);
            vb.push_back(*b.folds[k]);
          }
        }
      } else {
        va = a.defined();
        vb = b.defined();
      }
      if (va.size() < 2 || vb.size() < 2) continue;
      m.p[i][j] = t_test(va, vb, mode);
    }
  }
  return m;
}

nlohmann::json to_json(const ComparisonMatrix& m) {
  nlohmann::json p = nlohmann::json::array();
  for (const auto& row : m.p) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(v ? json_number(*v) : nlohmann::json(nullptr));
    p.push_back(r);
  }
  return {{"metric", "balanced_accuracy"}, {"test", to_string(m.mode)}, {"architectures", m.arch}, {"p_values", p}};
}

std::string render_text(std::span<const CvReport> reports, TTestMode mode) {
  const auto rows = ordered(reports);
  constexpr std::size_t kName = 10;
  constexpr std::size_t kCell = 24;
  std::ostringstream out;
  out << pad("Model", kName) << pad("Sensitivity", kCell) << pad("Specificity", kCell) << "Balanced accuracy\n";
  for (const auto* r : rows) {
    out << pad(r->arch, kName) << pad(format_summary(r->sensitivity), kCell)
        << pad(format_summary(r->specificity), kCell) << format_summary(r->balanced_accuracy) << "\n";
  }
  const auto m = compare(reports, mode);
  out << "\nBalanced accuracy t-test (" << to_string(mode) << "), two-sided p\n";
  out << pad("", kName);
  for (const auto& a : m.arch) out << pad(a, kName);
  out << "\n";
  for (std::size_t i = 0; i < m.arch.size(); ++i) {
    out << pad(m.arch[i], kName);
    for (std::size_t j = 0; j < m.arch.size(); ++j) {
      out << pad(i == j ? "-" : (m.p[i][j] ? format_fixed(*m.p[i][j], 4) : std::string(kUndefined)), kName);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_csv(std::span<const CvReport> reports) {
  std::ostringstream out;
  out << "architecture,metric,mean,ci_low,ci_high\n";
  for (const auto* r : ordered(reports)) {
    const std::pair<const char*, const MetricSummary*> metrics[] = {
        {"sensitivity", &r->sensitivity}, {"specificity", &r->specificity}, {"balanced_accuracy", &r->balanced_accuracy}};
    for (const auto& [name, s] : metrics) {
      out << r->arch << ',' << name << ',' << csv_field(s->mean) << ','
          << csv_field(s->ci ? std::optional<double>(s->ci->low) : std::nullopt) << ','
          << csv_field(s->ci ? std::optional<double>(s->ci->high) : std::nullopt) << "\n";
    }
  }
  return out.str();
}

std::vector<CsvSummaryRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "architecture,metric,mean,ci_low,ci_high") {
    throw Error("report CSV has an unexpected header");
  }
  std::vector<CsvSummaryRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw Error("report CSV line " + std::to_string(n) + ": expected 5 fields");
    rows.push_back({f[0], f[1], parse_optional(f[2], n), parse_optional(f[3], n), parse_optional(f[4], n)});
  }
  return rows;
}

}  // namespace pmat::eval
