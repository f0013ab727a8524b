// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "pmat/features.hpp"
#include "pmat/models/catalog.hpp"
#include "pmat/nn/trainer.hpp"
#include "pmat/snippet.hpp"

namespace pmat::models {

/// A snippet reduced to everything the classifiers consume.
struct EncodedSnippet {
  std::string snippet_id;
  std::string infant_id;
  Session session = Session::T1;
  Label label = Label::FmMinus;
  MotionSignals signals;
  FeatureVector features;  ///< Full24; the Base12 set is its prefix
};

EncodedSnippet encode_snippet(const PressureSnippet& snippet);
std::vector<EncodedSnippet> encode_all(std::span<const PressureSnippet> snippets, std::size_t jobs = 1);

/// The first 12 or all 24 statistical features.
std::vector<double> model_features(const EncodedSnippet& s, FeatureVariant variant);

/// steps x (3000 / steps) matrix, row-major. Step k concatenates frames
/// [k*F, (k+1)*F) with F = 500 / steps, each frame's 6 channels in order.
struct StepMatrix {
  std::size_t steps = 0;
  std::size_t width = 0;
  std::vector<double> values;

  double operator()(std::size_t step, std::size_t k) const { return values[step * width + k]; }
};

/// Throws Error unless steps is 25, 50 or 100.
StepMatrix reshape_for_lstm(const MotionSignals& signals, std::size_t steps);

/// Batch tensor in the architecture's input layout.
nn::Tensor network_inputs(const ArchSpec& spec, std::span<const EncodedSnippet* const> snippets);
nn::LabelledSet labelled_set(const ArchSpec& spec, std::span<const EncodedSnippet* const> snippets);

}  // namespace pmat::models
