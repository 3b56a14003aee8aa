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
#include <stdexcept>
#include <vector>

#include "flatchain/chain.hpp"

namespace flatchain {

// Resource limits for budgeted searches and region enumeration.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inclusive vertex box in Z^n; the feasible region for fillers.
struct Box {
  std::vector<int> lo, hi;
};

Box support_box(const Chain& a);
Box inflate(const Box& b, int margin);
bool box_contains_cell(const Box& b, const Cell& c);
// All degree-q cells whose closure lies in the box, sorted.
std::vector<Cell> cells_in_box(const Box& b, int ambient_dim, int q);

struct FlatNormOptions {
  int margin = -1;  // < 0: use the Chebyshev diameter of the support box
  std::int64_t region_cell_cap = 100000;
  int exact_cell_cap = 26;  // max filler cells for the integer search path
  long long search_node_budget = 80000000;
};

struct FlatNormCertificate {
  double value = 0.0;
  Chain filler;     // S, degree k+1
  Chain remainder;  // A - boundary(S)
  Box region;
  long long lp_iterations = 0;
  bool exact = false;  // true when produced by the integer search path
};

// min over fillers S supported in the region of mass(A - dS) + mass(S).
// Real coefficients solve a primal LP (in-repo simplex); integer and Z/m
// coefficients run the exact bounded-coefficient search when the region is
// small, and integer chains fall back to the real-relaxation LP otherwise
// (the relaxation is integral for top-dimensional fillers, which covers
// every codimension-1 use here).
FlatNormCertificate flat_norm(const Chain& a, const FlatNormOptions& options = {});

FlatNormCertificate flat_norm_lp(const Chain& a, const Box& region);
FlatNormCertificate flat_norm_exact(const Chain& a, const Box& region,
                                    long long node_budget = 80000000);

// Z -> R coefficient embedding (shared by the LP fallback and tests).
Chain embed_real(const Chain& a);

}  // namespace flatchain
