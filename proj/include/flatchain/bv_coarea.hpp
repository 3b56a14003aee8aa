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

#include <vector>

#include "flatchain/raster.hpp"

namespace flatchain {

// Discrete anisotropic total variation: the sum of |f(p) - f(q)| over
// face-adjacent site pairs, including exterior faces against the implicit
// zero outside the array.
double tv(const Raster& f);

// Number of cut faces of a site set (exterior faces included); equals the
// tv of the indicator raster.
std::int64_t perimeter(const SiteSet& sites);

struct LevelSet {
  double threshold = 0.0;
  SiteSet sites;  // {f > t} for t > 0, {f < t} for t < 0
};

LevelSet level_set(const Raster& f, double t);

struct CoareaReport {
  double lhs = 0.0;  // tv(f)
  double rhs = 0.0;  // sum over threshold bands of gap * perimeter
  bool equal = false;
  bool exact = false;  // integer arithmetic path was usable
};

// The discrete coarea identity tv(f) = integral of P({f > t} / {f < t}) dt,
// evaluated exactly band by band (perimeter is constant between consecutive
// distinct values).
CoareaReport coarea_check(const Raster& f);

// Connected components under face adjacency (the 2n-neighborhood), ordered
// by smallest site.
std::vector<SiteSet> m_connected_components(const SiteSet& sites);

// The finest tv-additive partition of the nonzero set: union-find over one
// representative threshold per band, both signs. Equals the components of
// same-sign adjacency (cross-checked in tests).
SitePartition finest_partition(const Raster& f);

// Components of the graph on nonzero sites with edges where f(p)*f(q) > 0;
// the independent route to the finest partition.
SitePartition same_sign_components(const Raster& f);

// Whether tv(f) = sum of tv over the blocks (restriction by indicator).
bool tv_additive(const Raster& f, const SitePartition& partition, double tol = 1e-9);

// f restricted to a block: 1_S * f.
Raster masked(const Raster& f, const SiteSet& sites);

// True iff each block of p1 is contained in a block of p2. Both must
// partition the same ground set.
bool refines(const SitePartition& p1, const SitePartition& p2);

}  // namespace flatchain
