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

namespace flatchain {

// min c^T x  subject to  A x = b, x >= 0, started from a caller-supplied
// feasible basis (one basic column per row, b >= 0 after the caller's row
// normalization). Dense tableau; Dantzig pricing with a Bland fallback for
// degenerate stalls.
struct LinearProgram {
  int rows = 0;
  int cols = 0;
  std::vector<double> matrix;  // row-major rows x cols
  std::vector<double> rhs;     // size rows
  std::vector<double> cost;    // size cols
  std::vector<int> basis;      // size rows, initial basic column per row
};

struct LpSolution {
  bool optimal = false;
  double objective = 0.0;
  std::vector<double> x;
  long long iterations = 0;
};

LpSolution solve_lp(const LinearProgram& lp, double pivot_tol = 1e-9);

}  // namespace flatchain
