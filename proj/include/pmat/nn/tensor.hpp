// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pmat::nn {

/// Dense row-major array of doubles with up to three axes
/// (batch x features or batch x time x channels).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const { return data_.size(); }
  std::size_t batch() const { return shape_.empty() ? 0 : shape_[0]; }
  /// Element count of one sample (product of all axes but the first).
  std::size_t sample_size() const;
  std::vector<std::size_t> sample_shape() const { return {shape_.begin() + (shape_.empty() ? 0 : 1), shape_.end()}; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> sample(std::size_t b) { return {data_.data() + b * sample_size(), sample_size()}; }
  std::span<const double> sample(std::size_t b) const { return {data_.data() + b * sample_size(), sample_size()}; }

  /// Samples `rows` (axis 0) copied into a new tensor, in the given order.
  Tensor gather(std::span<const std::size_t> rows) const;
  /// Contiguous samples [first, first + count).
  Tensor slice(std::size_t first, std::size_t count) const;

  bool all_finite() const;
  std::string shape_string() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

std::string shape_string(const std::vector<std::size_t>& shape);

}  // namespace pmat::nn
