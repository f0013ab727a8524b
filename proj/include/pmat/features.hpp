// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "pmat/encoding.hpp"

namespace pmat {

enum class FeatureVariant { Base12 = 12, Full24 = 24 };

inline std::size_t feature_count(FeatureVariant v) { return static_cast<std::size_t>(v); }

/// [mean, std] per channel in signal order; Full24 appends [mean, std] of
/// each channel's first difference.
struct FeatureVector {
  FeatureVariant variant = FeatureVariant::Base12;
  std::vector<double> values;
};

/// d[k] = s[k+1] - s[k]; per frame, not per second.
std::vector<double> first_difference(std::span<const double> signal);

/// Population (1/N) statistics.
double mean_of(std::span<const double> values);
double population_std(std::span<const double> values);

FeatureVector extract_features(const MotionSignals& signals, FeatureVariant variant);

/// Column names in feature order, e.g. "mean_x_t", "std_dx_b".
std::vector<std::string> feature_names(FeatureVariant variant);

}  // namespace pmat
