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

#include "flatchain/deform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace flatchain {

namespace {

// Nearest point of rho*Z + offset, ties toward -infinity. Monotone in x.
int snap(int x, int rho, int offset) {
  int r = (x - offset) % rho;
  if (r < 0) r += rho;
  const int down = x - r;
  return 2 * r <= rho ? down : down + rho;
}

// Number of axes of the cell strictly below d; the Koszul sign of the prism
// inserted along axis d is (-1)^{that count}.
int prefix_degree(const Cell& c, int d) {
  int count = 0;
  for (int ax : c.axes) {
    if (ax < d) ++count;
  }
  return count;
}

Cell insert_axis(const Cell& c, int d, int position_value) {
  Cell out = c;
  out.anchor[static_cast<std::size_t>(d)] = position_value;
  out.axes.insert(std::upper_bound(out.axes.begin(), out.axes.end(), d), d);
  return out;
}

// Chain map induced by snapping axis d: vertices move, intervals map to the
// lattice path between their snapped endpoints (possibly empty).
Chain push_axis(const Chain& a, int d, int rho, int offset) {
  Chain out(a.ambient_dim(), a.degree(), a.spacing(), a.group());
  for (const auto& [cell, g] : a.coefficients()) {
    const bool spans = std::find(cell.axes.begin(), cell.axes.end(), d) != cell.axes.end();
    const int v = cell.anchor[static_cast<std::size_t>(d)];
    if (!spans) {
      Cell moved = cell;
      moved.anchor[static_cast<std::size_t>(d)] = snap(v, rho, offset);
      out.accumulate(moved, g);
    } else {
      const int lo = snap(v, rho, offset);
      const int hi = snap(v + 1, rho, offset);
      for (int t = lo; t < hi; ++t) {
        Cell img = cell;
        img.anchor[static_cast<std::size_t>(d)] = t;
        out.accumulate(img, g);
      }
    }
  }
  return out;
}

// Prism operator for the axis-d snapping: cells spanning d contribute
// nothing; the rest sweep out the oriented path from their position to its
// snapped image, one degree up.
Chain prism_axis(const Chain& a, int d, int rho, int offset) {
  Chain out(a.ambient_dim(), a.degree() + 1, a.spacing(), a.group());
  for (const auto& [cell, g] : a.coefficients()) {
    if (std::find(cell.axes.begin(), cell.axes.end(), d) != cell.axes.end()) continue;
    const int v = cell.anchor[static_cast<std::size_t>(d)];
    const int w = snap(v, rho, offset);
    if (w == v) continue;
    const bool negative = (prefix_degree(cell, d) % 2 == 1) != (w < v);
    const GroupValue contrib = negative ? -g : g;
    for (int t = std::min(v, w); t < std::max(v, w); ++t) {
      out.accumulate(insert_axis(cell, d, t), contrib);
    }
  }
  return out;
}

double ratio_or_zero(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

DeformationResult deform(const Chain& a, int rho, std::vector<int> offset, const CostFunction* h) {
  const int n = a.ambient_dim();
  if (rho < 1) throw std::invalid_argument("deformation scale rho must be >= 1");
  if (static_cast<int>(offset.size()) != n)
    throw std::invalid_argument("offset dimension mismatch");
  for (int o : offset) {
    if (o < 0 || o >= rho) throw std::invalid_argument("offset components must lie in [0, rho)");
  }

  DeformationResult result;
  result.rho = rho;
  result.offset = offset;

  Chain current = a;
  Chain current_boundary =
      a.degree() >= 1 ? boundary(a) : Chain(n, 0, a.spacing(), a.group());
  Chain prism_sum(n, std::min(a.degree() + 1, n), a.spacing(), a.group());
  Chain boundary_prism_sum(n, a.degree(), a.spacing(), a.group());

  for (int d = 0; d < n; ++d) {
    const int o = offset[static_cast<std::size_t>(d)];
    if (a.degree() < n) prism_sum = add(prism_sum, prism_axis(current, d, rho, o));
    if (a.degree() >= 1)
      boundary_prism_sum = add(boundary_prism_sum, prism_axis(current_boundary, d, rho, o));
    current = push_axis(current, d, rho, o);
    if (a.degree() >= 1) current_boundary = push_axis(current_boundary, d, rho, o);
  }

  result.p = current;
  result.s = negate(prism_sum);
  result.r = negate(boundary_prism_sum);

  const double ma = mass(a);
  result.ratios.mass_p_over_mass_a = ratio_or_zero(mass(result.p), ma);
  result.ratios.hmass_p_over_hmass_a =
      h ? ratio_or_zero(h_mass(result.p, *h), h_mass(a, *h))
        : std::numeric_limits<double>::quiet_NaN();
  result.ratios.remainder_over_rho_eps_normal = ratio_or_zero(
      mass(result.r) + mass(result.s), rho * a.spacing() * normal_mass(a));
  return result;
}

DeformationResult deform_best(const Chain& a, int rho, int trials, std::uint64_t seed,
                              const CostFunction* h) {
  if (trials < 1) throw std::invalid_argument("deform_best requires at least one trial");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, rho - 1);
  DeformationResult best;
  double best_score = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::vector<int> offset(static_cast<std::size_t>(a.ambient_dim()));
    for (int& o : offset) o = rho == 1 ? 0 : pick(rng);
    DeformationResult candidate = deform(a, rho, std::move(offset), h);
    const double score = mass(candidate.r) + mass(candidate.s);
    if (score < best_score) {
      best_score = score;
      best = std::move(candidate);
    }
  }
  return best;
}

IsoperimetricReport isoperimetric_report(const Chain& a, const CostFunction& h, double c,
                                         const FlatNormOptions& options) {
  IsoperimetricReport report;
  report.mass_a = mass(a);
  report.hmass_a = h_mass(a, h);
  report.normal_a = normal_mass(a);
  report.lhs = flat_norm(a, options).value;
  const double nu = report.hmass_a + report.normal_a;
  report.eta_value = eta(h, report.mass_a, c, a.degree());
  report.eta_star_value = eta_star(h, report.hmass_a, c, a.degree());
  report.rhs = report.eta_value * nu;
  report.rhs_star = report.eta_star_value * nu;
  report.slack = ratio_or_zero(report.lhs, report.rhs);
  report.slack_star = ratio_or_zero(report.lhs, report.rhs_star);
  const double tol = 1e-9 * std::max(1.0, report.rhs);
  report.pass = report.lhs <= report.rhs + tol;
  report.pass_star = report.lhs <= report.rhs_star + 1e-9 * std::max(1.0, report.rhs_star);
  return report;
}

}  // namespace flatchain
