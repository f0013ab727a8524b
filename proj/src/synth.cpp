// SPDX-License-Identifier: Apache-2.0
#include "pmat/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <numbers>

#include "pmat/rng.hpp"

namespace pmat {

namespace {

// Crop window of the motion encoding, 1-based inclusive.
constexpr double kCropRowMin = 1, kCropRowMax = 29, kCropColMin = 4, kCropColMax = 29;

void check(const SynthSpec& spec) {
  for (const auto& b : spec.blobs) {
    if (b.center_row < kCropRowMin || b.center_row > kCropRowMax || b.center_col < kCropColMin ||
        b.center_col > kCropColMax) {
      throw Error("blob center (" + std::to_string(b.center_row) + ", " + std::to_string(b.center_col) +
                  ") outside crop window [1:29, 4:29]");
    }
    if (!(b.frequency_hz > 0.0 && b.frequency_hz < 50.0)) {
      throw Error("blob frequency must lie in (0, 50) Hz");
    }
    if (b.radius < 0.0 || b.amplitude < 0.0) throw Error("blob radius and amplitude must be >= 0");
  }
}

}  // namespace

SynthSpec default_synth_spec() {
  SynthSpec spec;
  spec.blobs.push_back({6.0, 16.0, 2.0, 0.0, 1.0, 1.0, 0.0, 0.0});
  spec.blobs.push_back({21.0, 16.0, 2.5, 0.0, 1.0, 1.0, 0.0, 0.0});
  return spec;
}

PressureSnippet generate_synthetic(const SynthSpec& spec) {
  check(spec);
  Rng rng(spec.seed);
  PressureSnippet out;
  out.label = spec.label;
  out.frames.resize(kSnippetFrames);
  std::vector<double> field(kGridCells);
  for (std::size_t f = 0; f < kSnippetFrames; ++f) {
    std::fill(field.begin(), field.end(), 0.0);
    const double t = static_cast<double>(f) / kSampleRateHz;
    for (const auto& b : spec.blobs) {
      const double w = 2.0 * std::numbers::pi * b.frequency_hz * t;
      const double cr = b.center_row + b.amplitude * std::sin(w + b.phase_row);
      const double cc = b.center_col + b.amplitude * std::sin(w + b.phase_col);
      const double peak = spec.pressure_scale * b.weight;
      if (b.radius == 0.0) {
        const auto r = static_cast<long>(std::lround(cr));
        const auto c = static_cast<long>(std::lround(cc));
        if (r >= 1 && r <= 32 && c >= 1 && c <= 32) field[(r - 1) * kGridCols + (c - 1)] += peak;
        continue;
      }
      const double cutoff2 = 9.0 * b.radius * b.radius;
      for (std::size_t i = 1; i <= kGridRows; ++i) {
        for (std::size_t j = 1; j <= kGridCols; ++j) {
          const double dr = static_cast<double>(i) - cr;
          const double dc = static_cast<double>(j) - cc;
          const double d2 = dr * dr + dc * dc;
          if (d2 > cutoff2) continue;
          field[(i - 1) * kGridCols + (j - 1)] += peak * std::exp(-d2 / (2.0 * b.radius * b.radius));
        }
      }
    }
    auto& frame = out.frames[f];
    const auto span = static_cast<std::uint64_t>(2.0 * spec.noise + 1.0);
    for (std::size_t k = 0; k < kGridCells; ++k) {
      double v = std::round(field[k]);
      if (spec.noise > 0.0) v += static_cast<double>(rng.below(span)) - std::floor(spec.noise);
      frame[k] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
  }
  return out;
}

std::vector<PressureSnippet> generate_synthetic_dataset(const SynthDatasetSpec& spec) {
  std::vector<PressureSnippet> out;
  out.reserve(spec.infants * spec.snippets_per_class * 2);
  for (std::size_t infant = 0; infant < spec.infants; ++infant) {
    Rng body(mix_seed(spec.seed, infant));
    const double top_row = body.uniform(5.0, 8.0);
    const double top_col = body.uniform(12.0, 20.0);
    const double bottom_row = body.uniform(19.0, 23.0);
    const double bottom_col = body.uniform(12.0, 20.0);
    const double top_radius = body.uniform(1.5, 2.5);
    const double bottom_radius = body.uniform(2.0, 3.0);
    const double weight = body.uniform(0.7, 1.0);
    char infant_id[16];
    std::snprintf(infant_id, sizeof infant_id, "I%02zu", infant + 1);

    std::size_t serial = 0;
    for (const Label label : {Label::FmMinus, Label::FmPlus}) {
      const RegimeSpec& regime = label == Label::FmPlus ? spec.fm_plus : spec.fm_minus;
      for (std::size_t k = 0; k < spec.snippets_per_class; ++k, ++serial) {
        Rng draw(mix_seed(mix_seed(spec.seed, infant), 1000 + serial));
        SynthSpec s;
        s.pressure_scale = spec.pressure_scale;
        s.noise = spec.noise;
        s.label = label;
        s.seed = draw.next();
        for (int blob = 0; blob < 2; ++blob) {
          BlobSpec b;
          b.center_row = blob == 0 ? top_row : bottom_row;
          b.center_col = blob == 0 ? top_col : bottom_col;
          b.radius = blob == 0 ? top_radius : bottom_radius;
          b.weight = weight;
          b.frequency_hz = draw.uniform(regime.frequency_min_hz, regime.frequency_max_hz);
          b.amplitude = draw.uniform(regime.amplitude_min, regime.amplitude_max);
          b.phase_row = draw.uniform(0.0, 2.0 * std::numbers::pi);
          b.phase_col = draw.uniform(0.0, 2.0 * std::numbers::pi);
          s.blobs.push_back(b);
        }
        PressureSnippet snippet = generate_synthetic(s);
        snippet.infant_id = infant_id;
        snippet.session = label == Label::FmMinus ? Session::T1
                                                  : std::array{Session::T5, Session::T6, Session::T7}[k % 3];
        snippet.snippet_id = std::string(infant_id) + (label == Label::FmPlus ? "_P" : "_M") +
                             std::to_string(k + 1);
        out.push_back(std::move(snippet));
      }
    }
  }
  return out;
}

namespace {

RegimeSpec regime_from_json(const nlohmann::json& j, RegimeSpec r) {
  r.frequency_min_hz = j.value("frequency_min_hz", r.frequency_min_hz);
  r.frequency_max_hz = j.value("frequency_max_hz", r.frequency_max_hz);
  r.amplitude_min = j.value("amplitude_min", r.amplitude_min);
  r.amplitude_max = j.value("amplitude_max", r.amplitude_max);
  return r;
}

nlohmann::json regime_to_json(const RegimeSpec& r) {
  return {{"frequency_min_hz", r.frequency_min_hz},
          {"frequency_max_hz", r.frequency_max_hz},
          {"amplitude_min", r.amplitude_min},
          {"amplitude_max", r.amplitude_max}};
}

}  // namespace

SynthDatasetSpec synth_dataset_spec_from_json(const nlohmann::json& doc) {
  SynthDatasetSpec s;
  s.infants = doc.value("infants", s.infants);
  s.snippets_per_class = doc.value("snippets_per_class", s.snippets_per_class);
  if (doc.contains("fm_minus")) s.fm_minus = regime_from_json(doc["fm_minus"], s.fm_minus);
  if (doc.contains("fm_plus")) s.fm_plus = regime_from_json(doc["fm_plus"], s.fm_plus);
  s.pressure_scale = doc.value("pressure_scale", s.pressure_scale);
  s.noise = doc.value("noise", s.noise);
  s.seed = doc.value("seed", s.seed);
  if (s.infants == 0 || s.snippets_per_class == 0) throw Error("synth spec needs infants and snippets");
  return s;
}

nlohmann::json to_json(const SynthDatasetSpec& s) {
  return {{"infants", s.infants},
          {"snippets_per_class", s.snippets_per_class},
          {"fm_minus", regime_to_json(s.fm_minus)},
          {"fm_plus", regime_to_json(s.fm_plus)},
          {"pressure_scale", s.pressure_scale},
          {"noise", s.noise},
          {"seed", s.seed}};
}

}  // namespace pmat
