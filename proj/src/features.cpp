// SPDX-License-Identifier: Apache-2.0
#include "pmat/features.hpp"

#include <algorithm>
#include <cmath>

namespace pmat {

std::vector<double> first_difference(std::span<const double> signal) {
  if (signal.size() < 2) throw Error("first_difference needs at least 2 samples");
  std::vector<double> d(signal.size() - 1);
  for (std::size_t k = 0; k + 1 < signal.size(); ++k) d[k] = signal[k + 1] - signal[k];
  return d;
}

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double population_std(std::span<const double> values) {
  if (values.empty()) return 0.0;
  // Exactly zero for constant input regardless of rounding in the mean.
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) return 0.0;
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

FeatureVector extract_features(const MotionSignals& signals, FeatureVariant variant) {
  FeatureVector fv;
  fv.variant = variant;
  fv.values.reserve(feature_count(variant));
  std::vector<std::vector<double>> channels;
  for (std::size_t c = 0; c < kChannels; ++c) channels.push_back(signals.channel(c));
  for (const auto& ch : channels) {
    fv.values.push_back(mean_of(ch));
    fv.values.push_back(population_std(ch));
  }
  if (variant == FeatureVariant::Full24) {
    for (const auto& ch : channels) {
      const auto d = first_difference(ch);
      fv.values.push_back(mean_of(d));
      fv.values.push_back(population_std(d));
    }
  }
  return fv;
}

std::vector<std::string> feature_names(FeatureVariant variant) {
  std::vector<std::string> names;
  for (const char* ch : kChannelNames) {
    names.push_back(std::string("mean_") + ch);
    names.push_back(std::string("std_") + ch);
  }
  if (variant == FeatureVariant::Full24) {
    for (const char* ch : kChannelNames) {
      names.push_back(std::string("mean_d") + ch);
      names.push_back(std::string("std_d") + ch);
    }
  }
  return names;
}

}  // namespace pmat
