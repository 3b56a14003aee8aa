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

#include "flatchain/flat_norm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "flatchain/simplex.hpp"

namespace flatchain {

namespace {

// Next strictly increasing q-subset of {0..n-1}; false when exhausted.
bool next_axes(std::vector<int>& axes, int n) {
  const int q = static_cast<int>(axes.size());
  for (int i = q - 1; i >= 0; --i) {
    if (axes[static_cast<std::size_t>(i)] < n - (q - i)) {
      ++axes[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < q; ++j)
        axes[static_cast<std::size_t>(j)] = axes[static_cast<std::size_t>(j) - 1] + 1;
      return true;
    }
  }
  return false;
}

double cell_volume(double spacing, int degree) { return std::pow(spacing, degree); }

FlatNormCertificate trivial_certificate(const Chain& a, const Box& region) {
  FlatNormCertificate cert;
  cert.value = mass(a);
  cert.filler = Chain(a.ambient_dim(), std::min(a.degree() + 1, a.ambient_dim()), a.spacing(), a.group());
  cert.remainder = a;
  cert.region = region;
  return cert;
}

}  // namespace

Box support_box(const Chain& a) {
  const int n = a.ambient_dim();
  Box b;
  b.lo.assign(static_cast<std::size_t>(n), 0);
  b.hi.assign(static_cast<std::size_t>(n), 0);
  bool first = true;
  for (const auto& [cell, g] : a.coefficients()) {
    for (int d = 0; d < n; ++d) {
      const int lo = cell.anchor[static_cast<std::size_t>(d)];
      const bool spans = std::find(cell.axes.begin(), cell.axes.end(), d) != cell.axes.end();
      const int hi = lo + (spans ? 1 : 0);
      if (first) {
        b.lo[static_cast<std::size_t>(d)] = lo;
        b.hi[static_cast<std::size_t>(d)] = hi;
      } else {
        b.lo[static_cast<std::size_t>(d)] = std::min(b.lo[static_cast<std::size_t>(d)], lo);
        b.hi[static_cast<std::size_t>(d)] = std::max(b.hi[static_cast<std::size_t>(d)], hi);
      }
    }
    first = false;
  }
  return b;
}

Box inflate(const Box& b, int margin) {
  Box out = b;
  for (std::size_t d = 0; d < out.lo.size(); ++d) {
    out.lo[d] -= margin;
    out.hi[d] += margin;
  }
  return out;
}

bool box_contains_cell(const Box& b, const Cell& c) {
  for (std::size_t d = 0; d < b.lo.size(); ++d) {
    const bool spans = std::find(c.axes.begin(), c.axes.end(), static_cast<int>(d)) != c.axes.end();
    if (c.anchor[d] < b.lo[d]) return false;
    if (c.anchor[d] + (spans ? 1 : 0) > b.hi[d]) return false;
  }
  return true;
}

std::vector<Cell> cells_in_box(const Box& b, int ambient_dim, int q) {
  std::vector<Cell> out;
  if (q < 0 || q > ambient_dim) return out;
  std::vector<int> axes(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) axes[static_cast<std::size_t>(i)] = i;
  do {
    std::vector<int> lo = b.lo, hi = b.hi;
    bool empty = false;
    for (int ax : axes) {
      hi[static_cast<std::size_t>(ax)] -= 1;
      if (hi[static_cast<std::size_t>(ax)] < lo[static_cast<std::size_t>(ax)]) empty = true;
    }
    if (!empty) {
      std::vector<int> anchor = lo;
      while (true) {
        out.push_back(Cell{anchor, axes});
        int d = ambient_dim - 1;
        for (; d >= 0; --d) {
          if (++anchor[static_cast<std::size_t>(d)] <= hi[static_cast<std::size_t>(d)]) break;
          anchor[static_cast<std::size_t>(d)] = lo[static_cast<std::size_t>(d)];
        }
        if (d < 0) break;
      }
    }
  } while (q > 0 && next_axes(axes, ambient_dim));
  std::sort(out.begin(), out.end());
  return out;
}

Chain embed_real(const Chain& a) {
  if (a.group() == Group::real()) return a;
  if (a.group() != Group::integer())
    throw std::invalid_argument("only integer chains embed into real coefficients");
  Chain out(a.ambient_dim(), a.degree(), a.spacing(), Group::real());
  for (const auto& [cell, g] : a.coefficients())
    out.set_coefficient(cell, GroupValue::real(static_cast<double>(g.int_value())));
  return out;
}

FlatNormCertificate flat_norm_lp(const Chain& a_in, const Box& region) {
  const Chain a = embed_real(a_in);
  const int n = a.ambient_dim();
  const int k = a.degree();

  const std::vector<Cell> rows_cells = cells_in_box(region, n, k);
  const std::vector<Cell> filler_cells = cells_in_box(region, n, k + 1);
  std::map<Cell, int> row_of;
  for (std::size_t i = 0; i < rows_cells.size(); ++i)
    row_of[rows_cells[i]] = static_cast<int>(i);
  for (const auto& [cell, g] : a.coefficients()) {
    if (!row_of.count(cell))
      throw std::invalid_argument("flat norm region does not contain the chain's support");
  }

  const int m = static_cast<int>(rows_cells.size());
  const int ns = static_cast<int>(filler_cells.size());
  const int ncols = 2 * m + 2 * ns;
  const double wk = cell_volume(a.spacing(), k);
  const double wk1 = cell_volume(a.spacing(), k + 1);

  LinearProgram lp;
  lp.rows = m;
  lp.cols = ncols;
  lp.matrix.assign(static_cast<std::size_t>(m) * ncols, 0.0);
  lp.rhs.assign(static_cast<std::size_t>(m), 0.0);
  lp.cost.assign(static_cast<std::size_t>(ncols), 0.0);
  lp.basis.assign(static_cast<std::size_t>(m), 0);

  std::vector<double> rhs_raw(static_cast<std::size_t>(m), 0.0);
  for (const auto& [cell, g] : a.coefficients())
    rhs_raw[static_cast<std::size_t>(row_of[cell])] = g.real_value();

  auto at = [&](int r, int c) -> double& {
    return lp.matrix[static_cast<std::size_t>(r) * ncols + c];
  };

  // Row sign flips make b >= 0 so that u (or w) is a feasible start basis.
  std::vector<double> row_sign(static_cast<std::size_t>(m), 1.0);
  for (int i = 0; i < m; ++i) {
    if (rhs_raw[static_cast<std::size_t>(i)] < 0.0) row_sign[static_cast<std::size_t>(i)] = -1.0;
    lp.rhs[static_cast<std::size_t>(i)] =
        row_sign[static_cast<std::size_t>(i)] * rhs_raw[static_cast<std::size_t>(i)];
    at(i, 2 * i) = row_sign[static_cast<std::size_t>(i)];        // u_i
    at(i, 2 * i + 1) = -row_sign[static_cast<std::size_t>(i)];   // w_i
    lp.cost[static_cast<std::size_t>(2 * i)] = wk;
    lp.cost[static_cast<std::size_t>(2 * i) + 1] = wk;
    lp.basis[static_cast<std::size_t>(i)] = row_sign[static_cast<std::size_t>(i)] > 0 ? 2 * i : 2 * i + 1;
  }
  for (int s = 0; s < ns; ++s) {
    const int pc = 2 * m + 2 * s;
    lp.cost[static_cast<std::size_t>(pc)] = wk1;
    lp.cost[static_cast<std::size_t>(pc) + 1] = wk1;
    for (const auto& [face, sign] : cell_boundary_faces(filler_cells[static_cast<std::size_t>(s)])) {
      auto it = row_of.find(face);
      if (it == row_of.end()) continue;  // cannot happen for a closed box
      const int r = it->second;
      at(r, pc) += row_sign[static_cast<std::size_t>(r)] * sign;
      at(r, pc + 1) -= row_sign[static_cast<std::size_t>(r)] * sign;
    }
  }

  const LpSolution sol = solve_lp(lp);

  FlatNormCertificate cert;
  cert.region = region;
  cert.lp_iterations = sol.iterations;
  cert.filler = Chain(n, k + 1, a.spacing(), Group::real());
  for (int s = 0; s < ns; ++s) {
    const double v = sol.x[static_cast<std::size_t>(2 * m + 2 * s)] -
                     sol.x[static_cast<std::size_t>(2 * m + 2 * s) + 1];
    if (std::abs(v) > 1e-9)
      cert.filler.set_coefficient(filler_cells[static_cast<std::size_t>(s)], GroupValue::real(v));
  }
  cert.remainder = subtract(a, boundary(cert.filler));
  cert.value = sol.objective;
  const double recomputed = mass(cert.remainder) + mass(cert.filler);
  if (std::abs(recomputed - cert.value) > 1e-6 * std::max(1.0, cert.value))
    throw std::runtime_error("flat norm certificate mismatch");
  cert.value = recomputed;
  return cert;
}

namespace {

struct ExactSearch {
  int m = 0;
  double wk = 0.0, wk1 = 0.0;
  int modulus = 0;  // 0 for Z
  std::int64_t coef_cap = 0;
  const std::vector<Cell>* filler_cells = nullptr;
  std::vector<std::int64_t> target;                    // A coefficient per row
  std::vector<std::vector<std::pair<int, int>>> incid;  // per filler cell: (row, sign)
  std::vector<std::vector<int>> finalize_at;            // rows closed after this cell
  std::vector<std::int64_t> acc;                        // dS accumulator per row
  std::vector<std::int64_t> assignment, best_assignment;
  std::vector<std::int64_t> coef_order;  // candidate coefficients, small norms first
  double best = 0.0;
  long long nodes = 0, node_budget = 0;

  double coef_norm(std::int64_t v) const {
    if (modulus == 0) return static_cast<double>(v < 0 ? -v : v);
    std::int64_t r = v % modulus;
    if (r < 0) r += modulus;
    return static_cast<double>(std::min(r, modulus - r));
  }

  void dfs(std::size_t idx, double partial) {
    if (++nodes > node_budget)
      throw resource_error("flat norm exact search budget exhausted");
    if (partial >= best - 1e-12) return;
    if (idx == filler_cells->size()) {
      best = partial;
      best_assignment = assignment;
      return;
    }
    for (const std::int64_t v : coef_order) {
      double cost = partial + coef_norm(v) * wk1;
      if (cost >= best - 1e-12) break;  // order is by nondecreasing norm
      assignment[idx] = v;
      for (const auto& [r, sign] : incid[idx]) acc[static_cast<std::size_t>(r)] += sign * v;
      for (const int r : finalize_at[idx])
        cost += coef_norm(target[static_cast<std::size_t>(r)] - acc[static_cast<std::size_t>(r)]) * wk;
      if (cost < best - 1e-12) dfs(idx + 1, cost);
      for (const auto& [r, sign] : incid[idx]) acc[static_cast<std::size_t>(r)] -= sign * v;
    }
    assignment[idx] = 0;
  }
};

}  // namespace

FlatNormCertificate flat_norm_exact(const Chain& a, const Box& region, long long node_budget) {
  if (!a.group().exact())
    throw std::invalid_argument("exact flat norm search requires an integer-like group");
  const int n = a.ambient_dim();
  const int k = a.degree();
  const std::vector<Cell> rows_cells = cells_in_box(region, n, k);
  const std::vector<Cell> filler_cells = cells_in_box(region, n, k + 1);
  std::map<Cell, int> row_of;
  for (std::size_t i = 0; i < rows_cells.size(); ++i) row_of[rows_cells[i]] = static_cast<int>(i);
  for (const auto& [cell, g] : a.coefficients()) {
    if (!row_of.count(cell))
      throw std::invalid_argument("flat norm region does not contain the chain's support");
  }

  ExactSearch search;
  search.m = static_cast<int>(rows_cells.size());
  search.wk = cell_volume(a.spacing(), k);
  search.wk1 = cell_volume(a.spacing(), k + 1);
  search.modulus = a.group().kind == GroupKind::integer_mod ? a.group().modulus : 0;
  search.filler_cells = &filler_cells;
  search.node_budget = node_budget;
  search.target.assign(static_cast<std::size_t>(search.m), 0);
  for (const auto& [cell, g] : a.coefficients())
    search.target[static_cast<std::size_t>(row_of[cell])] = g.int_value();
  std::int64_t cap = 0;
  for (const auto& [cell, g] : a.coefficients())
    cap = std::max(cap, static_cast<std::int64_t>(std::llround(g.norm())));
  search.coef_cap = cap;

  search.incid.resize(filler_cells.size());
  std::vector<int> last_touch(static_cast<std::size_t>(search.m), -1);
  for (std::size_t s = 0; s < filler_cells.size(); ++s) {
    for (const auto& [face, sign] : cell_boundary_faces(filler_cells[s])) {
      auto it = row_of.find(face);
      if (it == row_of.end()) continue;
      search.incid[s].emplace_back(it->second, sign);
      last_touch[static_cast<std::size_t>(it->second)] = static_cast<int>(s);
    }
  }
  search.finalize_at.resize(filler_cells.size());
  double base = 0.0;
  for (int r = 0; r < search.m; ++r) {
    if (last_touch[static_cast<std::size_t>(r)] < 0) {
      base += search.coef_norm(search.target[static_cast<std::size_t>(r)]) * search.wk;
    } else {
      search.finalize_at[static_cast<std::size_t>(last_touch[static_cast<std::size_t>(r)])].push_back(r);
    }
  }
  search.acc.assign(static_cast<std::size_t>(search.m), 0);
  search.assignment.assign(filler_cells.size(), 0);
  search.best_assignment.assign(filler_cells.size(), 0);
  {
    const std::int64_t lo = search.modulus == 0 ? -cap : 0;
    const std::int64_t hi = search.modulus == 0 ? cap : search.modulus - 1;
    for (std::int64_t v = lo; v <= hi; ++v) search.coef_order.push_back(v);
    std::stable_sort(search.coef_order.begin(), search.coef_order.end(),
                     [&](std::int64_t x, std::int64_t y) {
                       return search.coef_norm(x) < search.coef_norm(y);
                     });
  }
  // Seed the incumbent with S = 0 so pruning starts immediately.
  search.best = mass(a) + 1e-12;
  if (!filler_cells.empty()) search.dfs(0, base);

  FlatNormCertificate cert;
  cert.region = region;
  cert.exact = true;
  cert.filler = Chain(n, k + 1, a.spacing(), a.group());
  for (std::size_t s = 0; s < filler_cells.size(); ++s) {
    const std::int64_t v = search.best_assignment[s];
    if (v == 0) continue;
    cert.filler.set_coefficient(filler_cells[s],
                                search.modulus == 0
                                    ? GroupValue::integer(v)
                                    : GroupValue::integer_mod(v, search.modulus));
  }
  cert.remainder = subtract(a, boundary(cert.filler));
  cert.value = mass(cert.remainder) + mass(cert.filler);
  return cert;
}

FlatNormCertificate flat_norm(const Chain& a, const FlatNormOptions& options) {
  const int n = a.ambient_dim();
  const int k = a.degree();
  if (a.is_zero()) {
    Box region;
    region.lo.assign(static_cast<std::size_t>(n), 0);
    region.hi.assign(static_cast<std::size_t>(n), 0);
    FlatNormCertificate cert = trivial_certificate(a, region);
    cert.exact = a.group().exact();
    return cert;
  }

  Box box = support_box(a);
  int margin = options.margin;
  if (margin < 0) {
    int diameter = 0;
    for (std::size_t d = 0; d < box.lo.size(); ++d) diameter = std::max(diameter, box.hi[d] - box.lo[d]);
    margin = diameter;
  }
  box = inflate(box, margin);

  // Cheap overflow guard before materializing the region.
  {
    std::int64_t vertices = 1;
    for (std::size_t d = 0; d < box.lo.size(); ++d) {
      vertices *= (box.hi[d] - box.lo[d] + 1);
      if (vertices > options.region_cell_cap)
        throw resource_error("flat norm region exceeds the cell cap");
    }
  }
  const std::int64_t k_cells = static_cast<std::int64_t>(cells_in_box(box, n, k).size());
  const std::int64_t filler_count = static_cast<std::int64_t>(cells_in_box(box, n, k + 1).size());
  if (k_cells + filler_count > options.region_cell_cap)
    throw resource_error("flat norm region exceeds the cell cap");

  if (k == n) {
    // No fillers exist one degree up; the norm is the mass.
    FlatNormCertificate cert = trivial_certificate(a, box);
    cert.exact = a.group().exact();
    return cert;
  }

  if (a.group() == Group::real()) return flat_norm_lp(a, box);
  if (a.group().exact()) {
    if (filler_count <= options.exact_cell_cap)
      return flat_norm_exact(a, box, options.search_node_budget);
    if (a.group() == Group::integer()) return flat_norm_lp(a, box);
    throw resource_error("region too large for the exact search over a finite group");
  }
  throw std::invalid_argument("flat norm is unsupported for group " + a.group().name());
}

}  // namespace flatchain
