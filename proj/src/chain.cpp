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

#include "flatchain/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "flatchain/cost_function.hpp"

namespace flatchain {

Chain::Chain(int ambient_dim, int degree, double spacing, Group group)
    : ambient_dim_(ambient_dim), degree_(degree), spacing_(spacing), group_(group) {
  if (ambient_dim < 0) throw std::invalid_argument("ambient dimension must be nonnegative");
  if (degree < 0 || degree > ambient_dim)
    throw std::invalid_argument("chain degree must lie in [0, ambient_dim]");
  if (!(spacing > 0.0)) throw std::invalid_argument("chain spacing must be positive");
}

void Chain::set_coefficient(const Cell& cell, GroupValue value) {
  if (!cell_valid(cell, ambient_dim_, degree_))
    throw std::invalid_argument("cell " + format_cell(cell) + " does not fit this chain");
  if (value.group() != group_) throw std::invalid_argument("coefficient group mismatch");
  if (value.is_zero()) {
    coeffs_.erase(cell);
  } else {
    coeffs_[cell] = std::move(value);
  }
}

void Chain::accumulate(const Cell& cell, const GroupValue& value) {
  if (!cell_valid(cell, ambient_dim_, degree_))
    throw std::invalid_argument("cell " + format_cell(cell) + " does not fit this chain");
  if (value.group() != group_) throw std::invalid_argument("coefficient group mismatch");
  if (value.is_zero()) return;
  auto it = coeffs_.find(cell);
  if (it == coeffs_.end()) {
    coeffs_.emplace(cell, value);
    return;
  }
  const double scale = std::max(it->second.norm(), value.norm());
  GroupValue sum = it->second + value;
  if (sum.negligible_against(scale)) {
    coeffs_.erase(it);
  } else {
    it->second = std::move(sum);
  }
}

GroupValue Chain::coefficient(const Cell& cell) const {
  auto it = coeffs_.find(cell);
  return it == coeffs_.end() ? GroupValue::zero(group_) : it->second;
}

bool Chain::compatible_with(const Chain& o) const {
  return ambient_dim_ == o.ambient_dim_ && degree_ == o.degree_ && group_ == o.group_ &&
         spacing_ == o.spacing_;
}

Chain add(const Chain& a, const Chain& b) {
  if (a.is_zero() && a.ambient_dim() == 0) return b;
  if (b.is_zero() && b.ambient_dim() == 0) return a;
  if (!a.compatible_with(b))
    throw std::invalid_argument("cannot add chains with different dimension, degree, spacing or group");
  Chain out = a;
  for (const auto& [cell, g] : b.coefficients()) out.accumulate(cell, g);
  return out;
}

Chain negate(const Chain& a) {
  Chain out(a.ambient_dim(), a.degree(), a.spacing(), a.group());
  for (const auto& [cell, g] : a.coefficients()) out.set_coefficient(cell, -g);
  return out;
}

Chain subtract(const Chain& a, const Chain& b) { return add(a, negate(b)); }

Chain boundary(const Chain& a) {
  if (a.degree() == 0) throw std::domain_error("boundary of a 0-chain is undefined");
  Chain out(a.ambient_dim(), a.degree() - 1, a.spacing(), a.group());
  for (const auto& [cell, g] : a.coefficients()) {
    for (const auto& [face, sign] : cell_boundary_faces(cell)) {
      out.accumulate(face, sign > 0 ? g : -g);
    }
  }
  return out;
}

CellSet support(const Chain& a) {
  CellSet s;
  for (const auto& [cell, g] : a.coefficients()) s.insert(cell);
  return s;
}

Chain restrict_to(const Chain& a, const CellSet& cells) {
  Chain out(a.ambient_dim(), a.degree(), a.spacing(), a.group());
  for (const auto& [cell, g] : a.coefficients()) {
    if (cells.count(cell)) out.set_coefficient(cell, g);
  }
  return out;
}

double mass(const Chain& a) {
  const double cell_volume = std::pow(a.spacing(), a.degree());
  double total = 0.0;
  for (const auto& [cell, g] : a.coefficients()) total += g.norm();
  return total * cell_volume;
}

double normal_mass(const Chain& a) {
  if (a.degree() == 0) return mass(a);
  return mass(a) + mass(boundary(a));
}

double h_mass(const Chain& a, const CostFunction& h) {
  const double cell_volume = std::pow(a.spacing(), a.degree());
  double total = 0.0;
  for (const auto& [cell, g] : a.coefficients()) total += h.eval(g.norm());
  return total * cell_volume;
}

bool approx_equal(const Chain& a, const Chain& b, double tol) {
  const double diff = mass(subtract(a, b));
  return diff <= tol * std::max({1.0, mass(a), mass(b)});
}

Chain raster_to_chain(const Raster& f) {
  const int n = f.dim();
  std::vector<int> all_axes(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) all_axes[static_cast<std::size_t>(d)] = d;
  Chain out(n, n, 1.0, Group::real());
  for (std::int64_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    Cell cell{f.multi_index(i), all_axes};
    out.set_coefficient(cell, GroupValue::real(f[i]));
  }
  return out;
}

Raster chain_to_raster(const Chain& a) {
  if (a.degree() != a.ambient_dim())
    throw std::invalid_argument("chain_to_raster requires a top-dimensional chain");
  if (a.group() != Group::real())
    throw std::invalid_argument("chain_to_raster requires real coefficients");
  const int n = a.ambient_dim();
  std::vector<int> shape(static_cast<std::size_t>(n), 1);
  for (const auto& [cell, g] : a.coefficients()) {
    for (int d = 0; d < n; ++d) {
      if (cell.anchor[static_cast<std::size_t>(d)] < 0)
        throw std::invalid_argument("chain_to_raster requires nonnegative anchors");
      shape[static_cast<std::size_t>(d)] =
          std::max(shape[static_cast<std::size_t>(d)], cell.anchor[static_cast<std::size_t>(d)] + 1);
    }
  }
  Raster out(shape);
  for (const auto& [cell, g] : a.coefficients()) out.set(cell.anchor, g.real_value());
  return out;
}

}  // namespace flatchain
