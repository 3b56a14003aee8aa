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

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace flatchain {

// A unit lattice k-cube: the cube spanning `anchor` along exactly the listed
// axes. axes is a strictly increasing subset of {0,...,n-1}; the cell carries
// the canonical orientation of its sorted axes.
struct Cell {
  std::vector<int> anchor;
  std::vector<int> axes;

  int degree() const { return static_cast<int>(axes.size()); }

  // Lexicographic by anchor then axes; the tie-break order used everywhere.
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

using CellSet = std::set<Cell>;
using CellPartition = std::vector<CellSet>;

inline std::string format_cell(const Cell& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.anchor.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.anchor[i]);
  }
  s += ")[";
  for (std::size_t i = 0; i < c.axes.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.axes[i]);
  }
  s += "]";
  return s;
}

inline bool cell_valid(const Cell& c, int ambient_dim, int degree) {
  if (static_cast<int>(c.anchor.size()) != ambient_dim) return false;
  if (c.degree() != degree) return false;
  for (std::size_t i = 0; i < c.axes.size(); ++i) {
    if (c.axes[i] < 0 || c.axes[i] >= ambient_dim) return false;
    if (i > 0 && c.axes[i] <= c.axes[i - 1]) return false;
  }
  return true;
}

// Faces of a k-cell with incidence signs, alternating convention:
// the i-th axis (by position in the sorted list) contributes
// +(-1)^i at its far face and -(-1)^i at its near face.
// This is the convention that makes boundary-of-boundary vanish.
inline std::vector<std::pair<Cell, int>> cell_boundary_faces(const Cell& c) {
  std::vector<std::pair<Cell, int>> out;
  out.reserve(2 * c.axes.size());
  for (std::size_t i = 0; i < c.axes.size(); ++i) {
    const int sign = (i % 2 == 0) ? 1 : -1;
    Cell face;
    face.anchor = c.anchor;
    face.axes.reserve(c.axes.size() - 1);
    for (std::size_t j = 0; j < c.axes.size(); ++j) {
      if (j != i) face.axes.push_back(c.axes[j]);
    }
    Cell far = face;
    far.anchor[static_cast<std::size_t>(c.axes[i])] += 1;
    out.emplace_back(std::move(far), sign);
    out.emplace_back(std::move(face), -sign);
  }
  return out;
}

}  // namespace flatchain
