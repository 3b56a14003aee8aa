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

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "flatchain/deform.hpp"
#include "test_support.hpp"

using namespace flatchain;
using namespace flatchain::testing;

namespace {

Chain deformation_residual(const Chain& a, const DeformationResult& d) {
  Chain residual = subtract(subtract(a, d.p), d.r);
  if (!d.s.is_zero()) residual = subtract(residual, boundary(d.s));
  return residual;
}

}  // namespace

TEST_CASE("rho = 1 is the identity deformation") {
  std::mt19937_64 rng(1);
  const Chain a = random_chain(rng, 2, 1, 6, 5);
  const DeformationResult d = deform(a, 1, {0, 0});
  CHECK(approx_equal(d.p, a));
  CHECK(d.r.is_zero());
  CHECK(d.s.is_zero());
  CHECK(d.ratios.mass_p_over_mass_a == doctest::Approx(1.0));
}

TEST_CASE("single 1-cell at (1,0), rho = 2: the splitting identity is exact") {
  Chain a(2, 1, 1.0, Group::integer());
  a.set_coefficient(make_cell({1, 0}, {0}), GroupValue::integer(1));
  const DeformationResult d = deform(a, 2, {0, 0});
  CHECK(deformation_residual(a, d).is_zero());
  // P sits on the coarse lattice: anchors and free coordinates even.
  for (const auto& [cell, g] : d.p.coefficients()) {
    for (std::size_t dim = 0; dim < 2; ++dim) {
      const bool spans =
          std::find(cell.axes.begin(), cell.axes.end(), static_cast<int>(dim)) != cell.axes.end();
      if (!spans) CHECK(cell.anchor[dim] % 2 == 0);
    }
  }
}

TEST_CASE("splitting identity across degrees, dimensions, scales and groups") {
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int k = static_cast<int>(rng() % 3);
    if (k > n) continue;
    const int rho = 2 + static_cast<int>(rng() % 3);
    const Group group = (trial % 3 == 0)   ? Group::real()
                        : (trial % 3 == 1) ? Group::integer()
                                           : Group::integer_mod(5);
    const Chain a = random_chain(rng, n, k, 6, 6, 2, group);
    std::vector<int> offset(static_cast<std::size_t>(n));
    for (int& o : offset) o = static_cast<int>(rng() % static_cast<unsigned>(rho));
    const DeformationResult d = deform(a, rho, offset);
    CHECK(deformation_residual(a, d).is_zero());
    // the (e)-style ratio is finite
    CHECK(std::isfinite(d.ratios.remainder_over_rho_eps_normal));
    // P lives on the coarse lattice: every free coordinate sits on a coarse
    // hyperplane
    for (const auto& [cell, g] : d.p.coefficients()) {
      for (int dim = 0; dim < n; ++dim) {
        const bool spans =
            std::find(cell.axes.begin(), cell.axes.end(), dim) != cell.axes.end();
        if (spans) continue;
        const int rem = ((cell.anchor[static_cast<std::size_t>(dim)] -
                          offset[static_cast<std::size_t>(dim)]) %
                             rho +
                         rho) %
                        rho;
        CHECK(rem == 0);
      }
    }
    ++checked;
  }
  CHECK(checked > 80);
}

TEST_CASE("h-mass ratio is reported exactly when a cost is supplied") {
  std::mt19937_64 rng(88);
  const Chain a = random_chain(rng, 2, 1, 8, 6, 2, Group::integer());
  const CostFunction h = CostFunction::sqrt_shape();
  const DeformationResult with_h = deform(a, 2, {0, 0}, &h);
  CHECK(std::isfinite(with_h.ratios.hmass_p_over_hmass_a));
  CHECK(with_h.ratios.hmass_p_over_hmass_a ==
        doctest::Approx(h_mass(with_h.p, h) / h_mass(a, h)));
  const DeformationResult without_h = deform(a, 2, {0, 0});
  CHECK(std::isnan(without_h.ratios.hmass_p_over_hmass_a));
}

TEST_CASE("coarse chain P has uniform coefficients on rho-blocks") {
  std::mt19937_64 rng(7);
  const Chain a = random_chain(rng, 2, 1, 8, 6, 2, Group::integer());
  const int rho = 2;
  const DeformationResult d = deform(a, rho, {0, 0});
  // every unit cell of P lies in a coarse face; its partner cells in the
  // same face must carry the same coefficient
  for (const auto& [cell, g] : d.p.coefficients()) {
    const int axis = cell.axes[0];
    const int base = cell.anchor[static_cast<std::size_t>(axis)] -
                     ((cell.anchor[static_cast<std::size_t>(axis)] % rho + rho) % rho);
    for (int t = 0; t < rho; ++t) {
      Cell partner = cell;
      partner.anchor[static_cast<std::size_t>(axis)] = base + t;
      CHECK(d.p.coefficient(partner).int_value() == g.int_value());
    }
  }
}

TEST_CASE("deform_best minimizes the remainder score over trials") {
  std::mt19937_64 rng(12);
  const Chain a = random_chain(rng, 2, 1, 64, 12, 2, Group::integer());
  const DeformationResult once = deform_best(a, 3, 1, /*seed=*/5);
  const DeformationResult redo = deform_best(a, 3, 1, /*seed=*/5);
  CHECK(approx_equal(once.p, redo.p));
  CHECK(once.offset == redo.offset);

  const DeformationResult best = deform_best(a, 3, 16, /*seed=*/5);
  const double best_score = mass(best.r) + mass(best.s);
  std::mt19937_64 offsets(5);
  std::uniform_int_distribution<int> pick(0, 2);
  double sum = 0.0;
  int count = 0;
  for (int t = 0; t < 16; ++t) {
    std::vector<int> offset = {pick(offsets), pick(offsets)};
    const DeformationResult single = deform(a, 3, offset);
    const double score = mass(single.r) + mass(single.s);
    CHECK(best_score <= score + 1e-12);
    sum += score;
    ++count;
  }
  CHECK(best_score <= sum / count + 1e-12);
}

TEST_CASE("k = 0 deformation moves points along swept segments") {
  Chain a(2, 0, 1.0, Group::integer());
  a.set_coefficient(make_cell({1, 1}, {}), GroupValue::integer(2));
  a.set_coefficient(make_cell({3, 0}, {}), GroupValue::integer(-1));
  const DeformationResult d = deform(a, 2, {0, 0});
  CHECK(d.r.is_zero());  // no boundary at degree 0
  CHECK(deformation_residual(a, d).is_zero());
}

TEST_CASE("invalid deformation parameters are rejected") {
  Chain a(2, 1, 1.0, Group::integer());
  a.set_coefficient(make_cell({0, 0}, {0}), GroupValue::integer(1));
  CHECK_THROWS_AS(deform(a, 0, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(deform(a, 2, {0}), std::invalid_argument);
  CHECK_THROWS_AS(deform(a, 2, {2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(deform_best(a, 2, 0), std::invalid_argument);
}

TEST_CASE("isoperimetric report on the zero chain passes vacuously") {
  const CostFunction h = CostFunction::sqrt_shape();
  const IsoperimetricReport r = isoperimetric_report(Chain(2, 1, 1.0, Group::real()), h, 1.0);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.pass);
  CHECK(r.pass_star);
}

TEST_CASE("isoperimetric report wiring: rhs combines eta with the mass terms") {
  Chain square(2, 2, 1.0, Group::real());
  square.set_coefficient(make_cell({0, 0}, {0, 1}), GroupValue::real(1.0));
  const Chain a = boundary(square);
  const CostFunction h = CostFunction::sqrt_shape();
  FlatNormOptions opts;
  opts.margin = 1;
  const IsoperimetricReport r = isoperimetric_report(a, h, 4.0, opts);
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.mass_a == doctest::Approx(4.0));
  CHECK(r.normal_a == doctest::Approx(4.0));
  CHECK(r.hmass_a == doctest::Approx(4.0));  // sqrt(1) per edge
  CHECK(r.rhs == doctest::Approx(eta(h, 4.0, 4.0, 1) * 8.0));
  CHECK(r.rhs_star == doctest::Approx(eta_star(h, 4.0, 4.0, 1) * 8.0));
  CHECK(r.slack == doctest::Approx(r.lhs / r.rhs));
}
