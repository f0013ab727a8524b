// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "pmat/snippet.hpp"

namespace pmat {

/// A truncated Gaussian pressure blob whose center oscillates sinusoidally.
/// Coordinates are 1-based rows/cols of the original 32x32 grid.
struct BlobSpec {
  double center_row = 6.0;
  double center_col = 16.0;
  double radius = 2.0;        ///< Gaussian sigma in cells; 0 makes a point mass
  double amplitude = 0.0;     ///< oscillation amplitude in cells, both axes
  double frequency_hz = 1.0;  ///< must lie in (0, 50)
  double weight = 1.0;        ///< multiplies the pressure scale
  double phase_row = 0.0;     ///< radians
  double phase_col = 0.0;
};

struct SynthSpec {
  std::vector<BlobSpec> blobs;  ///< usually {shoulders/head, hips}
  double pressure_scale = 120.0;
  double noise = 0.0;  ///< uniform integer noise in [-noise, noise] per cell
  std::uint64_t seed = 0;
  Label label = Label::FmMinus;
};

/// Shoulders/head blob in the top region and a hips blob in the bottom region.
SynthSpec default_synth_spec();

/// Pure function of `spec` (including its seed). Blob truncation radius is 3 sigma.
/// Throws Error if a center lies outside the crop window or a frequency is not in (0, 50).
PressureSnippet generate_synthetic(const SynthSpec& spec);

struct RegimeSpec {
  double frequency_min_hz;
  double frequency_max_hz;
  double amplitude_min;
  double amplitude_max;
};

/// Two-regime dataset: FM- snippets move slowly with large excursions, FM+
/// snippets move fast with small excursions. Each infant gets its own blob
/// placement, size and weight.
struct SynthDatasetSpec {
  std::size_t infants = 20;
  std::size_t snippets_per_class = 8;  ///< per infant and class
  RegimeSpec fm_minus{0.6, 1.4, 2.0, 3.0};
  RegimeSpec fm_plus{4.0, 6.0, 0.5, 0.9};
  double pressure_scale = 120.0;
  double noise = 2.0;
  std::uint64_t seed = 1;
};

std::vector<PressureSnippet> generate_synthetic_dataset(const SynthDatasetSpec& spec);

SynthDatasetSpec synth_dataset_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SynthDatasetSpec& spec);

}  // namespace pmat
