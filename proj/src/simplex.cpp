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

#include "flatchain/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace flatchain {

LpSolution solve_lp(const LinearProgram& lp, double pivot_tol) {
  const int m = lp.rows;
  const int n = lp.cols;
  if (static_cast<int>(lp.matrix.size()) != m * n || static_cast<int>(lp.rhs.size()) != m ||
      static_cast<int>(lp.cost.size()) != n || static_cast<int>(lp.basis.size()) != m) {
    throw std::invalid_argument("inconsistent LP dimensions");
  }

  const int width = n + 1;  // rhs appended
  std::vector<double> t(lp.matrix.size() + static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i) * width + j] = lp.matrix[static_cast<std::size_t>(i) * n + j];
    t[static_cast<std::size_t>(i) * width + n] = lp.rhs[static_cast<std::size_t>(i)];
  }
  std::vector<int> basis = lp.basis;

  auto row = [&](int i) { return t.data() + static_cast<std::size_t>(i) * width; };

  // Gauss-Jordan on the starting basis columns; tolerant of any nonsingular
  // start, cheap when the basis is already a signed identity.
  for (int i = 0; i < m; ++i) {
    const int bj = basis[i];
    double piv = row(i)[bj];
    if (std::abs(piv) <= pivot_tol) {
      // Find a later row to swap in.
      int found = -1;
      for (int r = i + 1; r < m; ++r) {
        if (std::abs(row(r)[bj]) > pivot_tol) {
          found = r;
          break;
        }
      }
      if (found < 0) throw std::invalid_argument("singular starting basis");
      for (int j = 0; j <= n; ++j) std::swap(row(i)[j], row(found)[j]);
      std::swap(basis[i], basis[found]);
      piv = row(i)[basis[i]];
    }
    const double inv = 1.0 / piv;
    for (int j = 0; j <= n; ++j) row(i)[j] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == i) continue;
      const double factor = row(r)[bj];
      if (factor == 0.0) continue;
      for (int j = 0; j <= n; ++j) row(r)[j] -= factor * row(i)[j];
    }
  }

  // Reduced cost row: r_j = c_j - c_B . column_j
  std::vector<double> reduced(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    double z = 0.0;
    for (int i = 0; i < m; ++i) z += lp.cost[static_cast<std::size_t>(basis[i])] * row(i)[j];
    reduced[static_cast<std::size_t>(j)] = (j < n ? lp.cost[static_cast<std::size_t>(j)] : 0.0) - z;
  }

  LpSolution sol;
  const long long bland_after = 24LL * (m + n);
  const long long max_iter = 400LL * (m + n) + 20000;
  while (true) {
    // Entering variable.
    int enter = -1;
    if (sol.iterations < bland_after) {
      double best = -pivot_tol;
      for (int j = 0; j < n; ++j) {
        if (reduced[static_cast<std::size_t>(j)] < best) {
          best = reduced[static_cast<std::size_t>(j)];
          enter = j;
        }
      }
    } else {
      for (int j = 0; j < n; ++j) {
        if (reduced[static_cast<std::size_t>(j)] < -pivot_tol) {
          enter = j;
          break;
        }
      }
    }
    if (enter < 0) break;  // optimal

    // Ratio test; ties to the smallest basis index for anti-cycling.
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double a = row(i)[enter];
      if (a > pivot_tol) {
        const double ratio = row(i)[n] / a;
        if (leave < 0 || ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("LP is unbounded");

    // Pivot.
    const double inv = 1.0 / row(leave)[enter];
    for (int j = 0; j <= n; ++j) row(leave)[j] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double factor = row(r)[enter];
      if (factor == 0.0) continue;
      for (int j = 0; j <= n; ++j) row(r)[j] -= factor * row(leave)[j];
      if (row(r)[n] < 0.0 && row(r)[n] > -1e-11) row(r)[n] = 0.0;
    }
    {
      const double factor = reduced[static_cast<std::size_t>(enter)];
      for (int j = 0; j <= n; ++j) reduced[static_cast<std::size_t>(j)] -= factor * row(leave)[j];
    }
    basis[leave] = enter;

    if (++sol.iterations > max_iter) throw std::runtime_error("LP iteration limit exceeded");
  }

  sol.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) sol.x[static_cast<std::size_t>(basis[i])] = row(i)[n];
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += lp.cost[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
  sol.objective = obj;
  sol.optimal = true;
  return sol;
}

}  // namespace flatchain
