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

#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace flatchain {

// An n-dimensional array of reals with implicit zero exterior; the discrete
// stand-in for a BV function on R^n. Row-major storage.
class Raster {
 public:
  Raster() = default;
  explicit Raster(std::vector<int> shape);
  static Raster from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

  double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](std::int64_t i) { return values_[static_cast<std::size_t>(i)]; }

  // Multi-index access; reads outside the shape return 0.
  double at(std::span<const int> idx) const;
  void set(std::span<const int> idx, double v);

  bool in_bounds(std::span<const int> idx) const;
  std::int64_t linear_index(std::span<const int> idx) const;
  std::vector<int> multi_index(std::int64_t lin) const;

  // True when every stored value is an integer (enables exact arithmetic).
  bool integral() const;

  // Equality as functions on Z^n (zero-padded to a common shape).
  static bool same_function(const Raster& a, const Raster& b, double tol = 0.0);

 private:
  std::vector<int> shape_;
  std::vector<double> values_;
};

using Site = std::vector<int>;
using SiteSet = std::set<Site>;
using SitePartition = std::vector<SiteSet>;

}  // namespace flatchain
