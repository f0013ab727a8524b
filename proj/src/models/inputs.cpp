// SPDX-License-Identifier: Apache-2.0
#include "pmat/models/inputs.hpp"

#include <algorithm>

#include "pmat/parallel.hpp"

namespace pmat::models {

EncodedSnippet encode_snippet(const PressureSnippet& snippet) {
  EncodedSnippet e;
  e.snippet_id = snippet.snippet_id;
  e.infant_id = snippet.infant_id;
  e.session = snippet.session;
  e.label = snippet.label;
  e.signals = encode(snippet);
  e.features = extract_features(e.signals, FeatureVariant::Full24);
  return e;
}

std::vector<EncodedSnippet> encode_all(std::span<const PressureSnippet> snippets, std::size_t jobs) {
  std::vector<EncodedSnippet> out(snippets.size());
  parallel_for(snippets.size(), jobs, [&](std::size_t i) { out[i] = encode_snippet(snippets[i]); });
  return out;
}

std::vector<double> model_features(const EncodedSnippet& s, FeatureVariant variant) {
  const std::size_t n = feature_count(variant);
  if (s.features.values.size() < n) throw Error("snippet " + s.snippet_id + " lacks " + std::to_string(n) + " features");
  return {s.features.values.begin(), s.features.values.begin() + static_cast<std::ptrdiff_t>(n)};
}

StepMatrix reshape_for_lstm(const MotionSignals& signals, std::size_t steps) {
  if (steps != 25 && steps != 50 && steps != 100) {
    throw Error("LSTM step count must be 25, 50 or 100, got " + std::to_string(steps));
  }
  if (signals.frames() != kSnippetFrames) throw Error("reshape_for_lstm expects 500 frames");
  StepMatrix m;
  m.steps = steps;
  m.width = kSnippetFrames * kChannels / steps;
  // Frame-major row-major storage is already the concatenated layout.
  m.values.assign(signals.values().begin(), signals.values().end());
  return m;
}

nn::Tensor network_inputs(const ArchSpec& spec, std::span<const EncodedSnippet* const> snippets) {
  if (!spec.is_network()) throw Error(spec.name + " takes no network input");
  std::vector<std::size_t> shape{snippets.size()};
  const auto sample = spec.input_shape();
  shape.insert(shape.end(), sample.begin(), sample.end());
  nn::Tensor t(shape);
  for (std::size_t n = 0; n < snippets.size(); ++n) {
    auto dst = t.sample(n);
    const EncodedSnippet& s = *snippets[n];
    switch (spec.family) {
      case Family::Ffn: {
        const auto f = model_features(s, spec.features);
        std::copy(f.begin(), f.end(), dst.begin());
        break;
      }
      case Family::Cnn: {
        if (s.signals.frames() != kSnippetFrames) throw Error("snippet " + s.snippet_id + " is not 500 frames");
        std::copy(s.signals.values().begin(), s.signals.values().end(), dst.begin());
        break;
      }
      case Family::Lstm: {
        const auto m = reshape_for_lstm(s.signals, spec.lstm_steps);
        std::copy(m.values.begin(), m.values.end(), dst.begin());
        break;
      }
      case Family::Svm: break;
    }
  }
  return t;
}

nn::LabelledSet labelled_set(const ArchSpec& spec, std::span<const EncodedSnippet* const> snippets) {
  nn::LabelledSet set;
  set.inputs = network_inputs(spec, snippets);
  set.labels.reserve(snippets.size());
  for (const auto* s : snippets) set.labels.push_back(label_value(s->label));
  return set;
}

}  // namespace pmat::models
