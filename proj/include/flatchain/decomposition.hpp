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

#include <utility>
#include <vector>

#include "flatchain/chain.hpp"
#include "flatchain/cost_function.hpp"
#include "flatchain/flat_norm.hpp"

namespace flatchain {

inline constexpr long long kDefaultSearchBudget = 1000000;

// Budgeted searches either decide or report that the budget ran out;
// "unknown" is a first-class result, never a silent guess.
enum class SearchStatus { decided, budget_exhausted };

struct AtomReport {
  SearchStatus status = SearchStatus::decided;
  bool is_atom = false;
  CellPartition witness;  // a valid nontrivial bipartition when not an atom
};

struct Decomposition {
  Chain parent;
  CellPartition partition;  // ordered by lexicographically smallest cell
  std::vector<Chain> parts;
  bool valid = false;
  bool all_atoms = false;
  SearchStatus status = SearchStatus::decided;
};

// Whether the blocks cover the support and the normal mass is additive over
// the induced restrictions. Computed both globally (restrict + boundary)
// and face-locally (norm additivity of boundary contributions at every
// face); the two routes are cross-asserted.
// Overlapping blocks are an input error.
bool is_set_decomposition(const Chain& a, const CellPartition& partition);

// Cells that must share a block in every valid set-decomposition: at a face
// met by exactly two support cells whose contributions violate the triangle
// inequality strictly, separating the cells is impossible. Conservative for
// faces with more incident cells. Returns the classes, smallest cell first.
CellPartition forced_merges(const Chain& a);

AtomReport is_indecomposable(const Chain& a, long long budget = kDefaultSearchBudget);

// Recursive witness splitting until every part is set-indecomposable
// (Decomposition.all_atoms). Budget exhaustion propagates as status.
Decomposition maximal_decomposition(const Chain& a, long long budget = kDefaultSearchBudget);

// nu = h-mass + normal mass, the decomposition gauge.
double nu_value(const Chain& a, const CostFunction& h);

// Cost constructed from the chain's own coefficient norms (band masses
// weighted by cell volume).
CostFunction default_cost(const Chain& a);

// q(A) = min over valid set-decompositions of the largest part-nu.
// Exhaustive over partitions of the forced-merge classes; support must not
// exceed 12 cells.
double q_value(const Chain& a, const CostFunction& h);

// Greedy big-atom extraction: follow the maximal-q part of a q-optimal
// decomposition until an atom remains. Returns (atom, remainder) and
// guarantees q(remainder) <= nu(atom).
std::pair<Chain, Chain> extract_atom(const Chain& a, const CostFunction& h);

// Lexicographic minimizer of the nonincreasing normal-mass sequence over
// all valid set-decompositions (exhaustive; support <= 12 cells). Parts are
// returned in nonincreasing normal-mass order and are all atoms.
Decomposition decompose_lex(const Chain& a);

}  // namespace flatchain
