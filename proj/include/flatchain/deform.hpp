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
#include <vector>

#include "flatchain/chain.hpp"
#include "flatchain/cost_function.hpp"
#include "flatchain/flat_norm.hpp"

namespace flatchain {

struct DeformationRatios {
  double mass_p_over_mass_a = 0.0;
  double hmass_p_over_hmass_a = 0.0;  // NaN when no cost function was supplied
  // (mass(R) + mass(S)) / (rho * spacing * normal_mass(A))
  double remainder_over_rho_eps_normal = 0.0;
};

// The grid deformation splitting A = P + R + dS: P lives on the
// rho-coarsened lattice (translated by the offset), S is the accumulated
// prism of A under the axis-by-axis snapping homotopy and R the prism of dA.
struct DeformationResult {
  Chain p, r, s;
  int rho = 1;
  std::vector<int> offset;
  DeformationRatios ratios;
};

// Snap each vertex coordinate to the nearest coarse hyperplane
// (rho Z + offset), ties toward -infinity, one axis after another.
// offset components must lie in [0, rho).
DeformationResult deform(const Chain& a, int rho, std::vector<int> offset,
                         const CostFunction* h = nullptr);

// Runs deform over `trials` random offsets, returning the result with the
// smallest mass(R) + mass(S).
DeformationResult deform_best(const Chain& a, int rho, int trials, std::uint64_t seed = 0,
                              const CostFunction* h = nullptr);

struct IsoperimetricReport {
  double lhs = 0.0;       // flat norm of A
  double mass_a = 0.0, hmass_a = 0.0, normal_a = 0.0;
  double eta_value = 0.0, eta_star_value = 0.0;
  double rhs = 0.0, rhs_star = 0.0;
  double slack = 0.0, slack_star = 0.0;  // lhs / rhs, 0 when rhs = 0
  bool pass = false, pass_star = false;
};

// Checks flat_norm(A) <= eta(mass A) * (hmass + normal mass) at the supplied
// deformation constant c, plus the eta_star variant driven by the h-mass.
IsoperimetricReport isoperimetric_report(const Chain& a, const CostFunction& h, double c,
                                         const FlatNormOptions& options = {});

}  // namespace flatchain
