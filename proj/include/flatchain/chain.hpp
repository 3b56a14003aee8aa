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

#include <map>
#include <vector>

#include "flatchain/cell.hpp"
#include "flatchain/group.hpp"
#include "flatchain/raster.hpp"

namespace flatchain {

class CostFunction;

// A degree-k sparse cubical chain on the scaled integer lattice.
// Canonical sparsity: no stored coefficient is zero. Immutable in practice;
// all operations below are pure functions returning fresh chains.
class Chain {
 public:
  Chain() = default;
  Chain(int ambient_dim, int degree, double spacing, Group group);

  int ambient_dim() const { return ambient_dim_; }
  int degree() const { return degree_; }
  double spacing() const { return spacing_; }
  const Group& group() const { return group_; }

  const std::map<Cell, GroupValue>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }

  // Overwrites the coefficient on a cell (erases when zero).
  void set_coefficient(const Cell& cell, GroupValue value);
  // Adds into the coefficient on a cell; drops results that are zero or
  // negligible against the operands (canonical sparsity).
  void accumulate(const Cell& cell, const GroupValue& value);

  // Zero of the chain's group when the cell is absent.
  GroupValue coefficient(const Cell& cell) const;

  bool compatible_with(const Chain& o) const;

 private:
  int ambient_dim_ = 0;
  int degree_ = 0;
  double spacing_ = 1.0;
  Group group_ = Group::real();
  std::map<Cell, GroupValue> coeffs_;
};

Chain add(const Chain& a, const Chain& b);
Chain negate(const Chain& a);
Chain subtract(const Chain& a, const Chain& b);

// Cubical boundary under the alternating incidence convention of
// cell_boundary_faces. Degree 0 input is a degree error.
Chain boundary(const Chain& a);

CellSet support(const Chain& a);
Chain restrict_to(const Chain& a, const CellSet& cells);

double mass(const Chain& a);
double normal_mass(const Chain& a);  // mass + boundary mass; just mass at degree 0
double h_mass(const Chain& a, const CostFunction& h);

// mass(a - b) <= tol * max(1, mass a, mass b)
bool approx_equal(const Chain& a, const Chain& b, double tol = kRealTolerance);

// Bridge between degree-n real chains and rasters. Site (i_0,...,i_{n-1})
// corresponds to the top cell anchored there; spacing 1.
Chain raster_to_chain(const Raster& f);
Raster chain_to_raster(const Chain& a);

}  // namespace flatchain
