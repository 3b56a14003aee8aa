// Copyright 2026 The flatchain Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flatchain/raster.hpp"

#include <cmath>
#include <stdexcept>

namespace flatchain {

Raster::Raster(std::vector<int> shape) : shape_(std::move(shape)) {
  std::int64_t total = 1;
  for (int s : shape_) {
    if (s <= 0) throw std::invalid_argument("raster shape entries must be positive");
    total *= s;
  }
  values_.assign(static_cast<std::size_t>(total), 0.0);
}

Raster Raster::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("raster needs at least one row");
  const int cols = static_cast<int>(rows[0].size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("ragged raster rows");
  }
  if (cols == 0) throw std::invalid_argument("raster needs at least one column");
  Raster out({static_cast<int>(rows.size()), cols});
  std::int64_t i = 0;
  for (const auto& r : rows)
    for (double v : r) out[i++] = v;
  return out;
}

bool Raster::in_bounds(std::span<const int> idx) const {
  if (idx.size() != shape_.size()) return false;
  for (std::size_t d = 0; d < shape_.size(); ++d) {
    if (idx[d] < 0 || idx[d] >= shape_[d]) return false;
  }
  return true;
}

std::int64_t Raster::linear_index(std::span<const int> idx) const {
  std::int64_t lin = 0;
  for (std::size_t d = 0; d < shape_.size(); ++d) lin = lin * shape_[d] + idx[d];
  return lin;
}

std::vector<int> Raster::multi_index(std::int64_t lin) const {
  std::vector<int> idx(shape_.size());
  for (std::size_t d = shape_.size(); d-- > 0;) {
    idx[d] = static_cast<int>(lin % shape_[d]);
    lin /= shape_[d];
  }
  return idx;
}

double Raster::at(std::span<const int> idx) const {
  if (!in_bounds(idx)) return 0.0;
  return values_[static_cast<std::size_t>(linear_index(idx))];
}

void Raster::set(std::span<const int> idx, double v) {
  if (!in_bounds(idx)) throw std::out_of_range("raster index out of bounds");
  values_[static_cast<std::size_t>(linear_index(idx))] = v;
}

bool Raster::integral() const {
  for (double v : values_) {
    if (v != std::nearbyint(v)) return false;
  }
  return true;
}

bool Raster::same_function(const Raster& a, const Raster& b, double tol) {
  if (a.dim() != b.dim()) return false;
  std::vector<int> shape(a.shape_.size());
  for (std::size_t d = 0; d < shape.size(); ++d) shape[d] = std::max(a.shape_[d], b.shape_[d]);
  std::int64_t total = 1;
  for (int s : shape) total *= s;
  std::vector<int> idx(shape.size(), 0);
  for (std::int64_t i = 0; i < total; ++i) {
    if (std::abs(a.at(idx) - b.at(idx)) > tol) return false;
    for (std::size_t d = shape.size(); d-- > 0;) {
      if (++idx[d] < shape[d]) break;
      idx[d] = 0;
    }
  }
  return true;
}

}  // namespace flatchain
