// SPDX-License-Identifier: Apache-2.0
#include "pmat/nn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "pmat/common.hpp"

namespace pmat::nn {

Tensor::Tensor(std::vector<std::size_t> shape, double fill) : shape_(std::move(shape)) {
  if (shape_.empty() || shape_.size() > 3) throw Error("tensor rank must be 1..3");
  const std::size_t n = std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>());
  data_.assign(n, fill);
}

std::size_t Tensor::sample_size() const {
  if (shape_.empty()) return 0;
  return std::accumulate(shape_.begin() + 1, shape_.end(), std::size_t{1}, std::multiplies<>());
}

Tensor Tensor::gather(std::span<const std::size_t> rows) const {
  auto shape = shape_;
  shape[0] = rows.size();
  Tensor out(shape);
  const std::size_t n = sample_size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= batch()) throw Error("gather index out of range");
    std::copy_n(data_.begin() + rows[r] * n, n, out.data_.begin() + r * n);
  }
  return out;
}

Tensor Tensor::slice(std::size_t first, std::size_t count) const {
  if (first + count > batch()) throw Error("slice out of range");
  auto shape = shape_;
  shape[0] = count;
  Tensor out(shape);
  const std::size_t n = sample_size();
  std::copy_n(data_.begin() + first * n, count * n, out.data_.begin());
  return out;
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + ")";
}

std::string Tensor::shape_string() const { return nn::shape_string(shape_); }

}  // namespace pmat::nn
