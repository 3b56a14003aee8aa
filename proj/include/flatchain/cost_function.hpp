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

namespace flatchain {

// Dyadic band masses: a_j collects value*weight over samples with value in
// (2^{-j-1}, 2^{-j}]; values above 1/2 fold into band 0.
struct BandMasses {
  std::vector<double> a;

  double total() const;
};

BandMasses band_masses(const std::vector<std::pair<double, double>>& samples);

// A concave increasing cost h with h(0)=0. Two representations:
//  - dyadic: piecewise-linear with slope c_j on (2^{-j-1}, 2^{-j}] for
//    j = 0..J-1, slope 1 above 1/2, and the analytic continuation
//    c_j = 2^{(j-J)/2} c_J below 2^{-J} (so h ~ C sqrt(s) near 0);
//  - power: h(s) = s^alpha for alpha in (0, 1] (alpha = 1 is the identity,
//    whose h-mass is the usual mass).
class CostFunction {
 public:
  enum class Kind { dyadic, power };

  CostFunction() = default;  // the sqrt cost

  static CostFunction power_shape(double alpha);
  static CostFunction sqrt_shape() { return power_shape(0.5); }
  static CostFunction identity() { return power_shape(1.0); }
  // slopes = c_0..c_J, nondecreasing, c_0 = 1.
  static CostFunction from_slopes(std::vector<double> slopes);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }

  double eval(double s) const;
  double operator()(double s) const { return eval(s); }
  // h^{-1}(m); uses the analytic tail when m is below every breakpoint.
  double inverse(double m) const;
  // The slope g(s) (left-continuous on band boundaries).
  double slope_at(double s) const;

  int tail_index() const { return static_cast<int>(slopes_.size()) - 1; }
  double tail_coefficient() const { return slopes_.empty() ? 1.0 : slopes_.back(); }
  const std::vector<double>& slopes() const { return slopes_; }
  // h evaluated at the breakpoints 2^{-j}, j = 0..J.
  const std::vector<double>& breakpoint_values() const { return h_at_breakpoints_; }

  // h(s)/s at s = 2^{-40} exceeds the floor (the h'(0+) = infinity check).
  bool superlinear_at_zero(double floor_ratio = 8.0) const;

 private:
  Kind kind_ = Kind::power;
  double alpha_ = 0.5;
  std::vector<double> slopes_;            // c_0..c_J
  std::vector<double> h_at_breakpoints_;  // h(2^{-j}), j = 0..J
};

// The Appendix-A construction: from dyadic band masses, build the slope
// sequence c_j through the m_l / b_j / c_j recursion so that
// sum_j c_j a_j < infinity and h(s) <= (2+sqrt 2) s c_j on band j.
// Zero total mass falls back to h(s) = sqrt(s).
CostFunction construct_h(const BandMasses& a, int depth = 64);

// eta_tilde(m) = sup{ s/h(s) : 0 < s <= m } = m/h(m) for concave h; 0 at 0.
double eta_tilde(const CostFunction& h, double m);

// eta(m) = c * inf_eps [ eta_tilde(c m eps^{-k}) + eps ], the isoperimetric
// modulus. Minimized over eps in [1e-6, 1e6] by scan + golden section on
// log eps, relative tolerance 1e-6. Degree 0 degenerates to c*eta_tilde(c m).
double eta(const CostFunction& h, double m, double c, int k);

// Same with eta_tilde_star(m) = h^{-1}(m)/m; the argument is an h-mass.
double eta_star(const CostFunction& h, double m, double c, int k);

}  // namespace flatchain
