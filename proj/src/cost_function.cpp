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

#include "flatchain/cost_function.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace flatchain {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
// 1 / (1 - 2^{-1/2}); the geometric factor of the analytic tail.
constexpr double kTailSum = 3.414213562373095;

// Band index j with s in (2^{-j-1}, 2^{-j}]; exact at powers of two.
int band_index(double s) {
  const double l = -std::log2(s);
  int j = static_cast<int>(std::floor(l));
  // Guard against rounding just past a breakpoint.
  if (std::exp2(-static_cast<double>(j)) < s) --j;
  if (j >= 0 && std::exp2(-static_cast<double>(j) - 1.0) >= s) ++j;
  return j;
}

}  // namespace

double BandMasses::total() const {
  double t = 0.0;
  for (double x : a) t += x;
  return t;
}

BandMasses band_masses(const std::vector<std::pair<double, double>>& samples) {
  BandMasses out;
  for (const auto& [value, weight] : samples) {
    if (!(value > 0.0)) throw std::invalid_argument("band_masses requires positive values");
    if (weight < 0.0) throw std::invalid_argument("band_masses requires nonnegative weights");
    const int j = std::max(0, band_index(value));
    if (static_cast<int>(out.a.size()) <= j) out.a.resize(static_cast<std::size_t>(j) + 1, 0.0);
    out.a[static_cast<std::size_t>(j)] += value * weight;
  }
  return out;
}

CostFunction CostFunction::power_shape(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("power cost requires alpha in (0, 1]");
  CostFunction h;
  h.kind_ = Kind::power;
  h.alpha_ = alpha;
  return h;
}

CostFunction CostFunction::from_slopes(std::vector<double> slopes) {
  if (slopes.size() < 2 || slopes.front() != 1.0)
    throw std::invalid_argument("slope list must start with c_0 = 1 and carry at least c_1");
  for (std::size_t j = 1; j < slopes.size(); ++j) {
    if (slopes[j] < slopes[j - 1] - 1e-12)
      throw std::invalid_argument("slope list must be nondecreasing");
  }
  CostFunction h;
  h.kind_ = Kind::dyadic;
  h.slopes_ = std::move(slopes);
  const int J = h.tail_index();
  h.h_at_breakpoints_.assign(h.slopes_.size(), 0.0);
  // h(2^{-J}) has the closed geometric form; walk the bands upward from it.
  h.h_at_breakpoints_[static_cast<std::size_t>(J)] =
      h.slopes_.back() * std::exp2(-static_cast<double>(J) - 1.0) * kTailSum;
  for (int j = J - 1; j >= 0; --j) {
    h.h_at_breakpoints_[static_cast<std::size_t>(j)] =
        h.h_at_breakpoints_[static_cast<std::size_t>(j) + 1] +
        std::exp2(-static_cast<double>(j) - 1.0) * h.slopes_[static_cast<std::size_t>(j)];
  }
  return h;
}

double CostFunction::eval(double s) const {
  if (s < 0.0) throw std::domain_error("cost function argument must be nonnegative");
  if (s == 0.0) return 0.0;
  if (kind_ == Kind::power) return std::pow(s, alpha_);
  if (s > 0.5) return h_at_breakpoints_[1] + (s - 0.5);
  const int J = tail_index();
  const int j = band_index(s);
  if (j < J) {
    return h_at_breakpoints_[static_cast<std::size_t>(j) + 1] +
           (s - std::exp2(-static_cast<double>(j) - 1.0)) * slopes_[static_cast<std::size_t>(j)];
  }
  // Analytic tail: slope 2^{(j-J)/2} c_J on band j.
  const double cj = tail_coefficient() * std::exp2(0.5 * static_cast<double>(j - J));
  const double h_next = cj * std::exp2(-static_cast<double>(j) - 2.0) * kSqrt2 * kTailSum;
  return h_next + (s - std::exp2(-static_cast<double>(j) - 1.0)) * cj;
}

double CostFunction::slope_at(double s) const {
  if (!(s > 0.0)) throw std::domain_error("slope_at requires a positive argument");
  if (kind_ == Kind::power) return alpha_ * std::pow(s, alpha_ - 1.0);
  if (s > 0.5) return 1.0;
  const int J = tail_index();
  const int j = band_index(s);
  if (j <= J) return slopes_[static_cast<std::size_t>(j)];
  return tail_coefficient() * std::exp2(0.5 * static_cast<double>(j - J));
}

double CostFunction::inverse(double m) const {
  if (m < 0.0) throw std::domain_error("inverse requires a nonnegative argument");
  if (m == 0.0) return 0.0;
  if (kind_ == Kind::power) return std::pow(m, 1.0 / alpha_);
  if (m >= h_at_breakpoints_[0]) return 1.0 + (m - h_at_breakpoints_[0]);
  const int J = tail_index();
  if (m > h_at_breakpoints_[static_cast<std::size_t>(J)]) {
    // Breakpoint values decrease with j; find the band containing m.
    int lo = 0, hi = J;  // h(2^{-lo}) >= m > h(2^{-hi})
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (h_at_breakpoints_[static_cast<std::size_t>(mid)] >= m)
        lo = mid;
      else
        hi = mid;
    }
    return std::exp2(-static_cast<double>(lo) - 1.0) +
           (m - h_at_breakpoints_[static_cast<std::size_t>(lo) + 1]) /
               slopes_[static_cast<std::size_t>(lo)];
  }
  // Tail: h(2^{-j}) = h(2^{-J}) * 2^{-(j-J)/2}.
  const double hJ = h_at_breakpoints_[static_cast<std::size_t>(J)];
  int j = J + static_cast<int>(std::floor(2.0 * std::log2(hJ / m)));
  while (j > J && hJ * std::exp2(-0.5 * static_cast<double>(j - J)) < m) --j;
  while (hJ * std::exp2(-0.5 * static_cast<double>(j + 1 - J)) >= m) ++j;
  // Now h(2^{-j}) >= m > h(2^{-j-1}); invert the linear band.
  const double cj = tail_coefficient() * std::exp2(0.5 * static_cast<double>(j - J));
  const double h_next = hJ * std::exp2(-0.5 * static_cast<double>(j + 1 - J));
  return std::exp2(-static_cast<double>(j) - 1.0) + (m - h_next) / cj;
}

bool CostFunction::superlinear_at_zero(double floor_ratio) const {
  const double s = std::exp2(-40.0);
  return eval(s) / s >= floor_ratio;
}

CostFunction construct_h(const BandMasses& a, int depth) {
  if (depth < 1) throw std::invalid_argument("construct_h depth must be positive");
  const double total = a.total();
  if (!(total > 0.0)) return CostFunction::sqrt_shape();

  const int n_bands = static_cast<int>(a.a.size());
  // Suffix sums: tail(m) = sum_{i > m} a_i.
  auto tail = [&](long long m) {
    double t = 0.0;
    for (int i = static_cast<int>(m) + 1; i < n_bands; ++i) t += a.a[static_cast<std::size_t>(i)];
    return t;
  };

  // m_l: smallest integer with tail(m) <= 2^{-l} * total, forced strictly
  // increasing. Anchors (m_l, l) define b by affine interpolation from
  // (0, 1); the forced growth guarantees the anchors reach the depth.
  std::vector<std::pair<long long, double>> anchors;
  anchors.emplace_back(0, 1.0);
  long long m_prev = 0;
  for (int l = 1; m_prev < depth; ++l) {
    long long unforced = 0;
    while (unforced < n_bands && tail(unforced) > std::exp2(-static_cast<double>(l)) * total)
      ++unforced;
    const long long m_l = std::max(m_prev + 1, unforced);
    anchors.emplace_back(m_l, static_cast<double>(l));
    m_prev = m_l;
  }

  std::vector<double> b(static_cast<std::size_t>(depth) + 1, 1.0);
  for (std::size_t seg = 0; seg + 1 < anchors.size(); ++seg) {
    const auto [j0, v0] = anchors[seg];
    const auto [j1, v1] = anchors[seg + 1];
    for (long long j = j0; j <= std::min<long long>(j1, depth); ++j) {
      b[static_cast<std::size_t>(j)] =
          v0 + (v1 - v0) * static_cast<double>(j - j0) / static_cast<double>(j1 - j0);
    }
  }

  std::vector<double> c(static_cast<std::size_t>(depth) + 1, 1.0);
  for (int j = 1; j <= depth; ++j) {
    c[static_cast<std::size_t>(j)] =
        std::min(kSqrt2, b[static_cast<std::size_t>(j)] / b[static_cast<std::size_t>(j) - 1]) *
        c[static_cast<std::size_t>(j) - 1];
  }
  return CostFunction::from_slopes(std::move(c));
}

double eta_tilde(const CostFunction& h, double m) {
  if (m < 0.0) throw std::domain_error("eta_tilde requires a nonnegative argument");
  if (m == 0.0) return 0.0;
  return m / h.eval(m);
}

namespace {

// Scan then golden-section on t = log(eps); the scan keeps the minimization
// honest when the piecewise structure of eta_tilde dents unimodality.
double minimize_over_eps(const std::function<double(double)>& f) {
  constexpr double t_lo = -13.815510557964274;  // log(1e-6)
  constexpr double t_hi = 13.815510557964274;   // log(1e+6)
  constexpr int n_scan = 160;
  double best_t = t_lo, best_v = f(std::exp(t_lo));
  for (int i = 1; i <= n_scan; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / n_scan;
    const double v = f(std::exp(t));
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  const double step = (t_hi - t_lo) / n_scan;
  double lo = std::max(t_lo, best_t - step);
  double hi = std::min(t_hi, best_t + step);
  constexpr double phi = 0.6180339887498949;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = f(std::exp(x1));
  double f2 = f(std::exp(x2));
  // Relative tolerance 1e-6 on eps, i.e. absolute on log eps.
  while (hi - lo > 1e-6) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(std::exp(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(std::exp(x2));
    }
  }
  return std::min({best_v, f1, f2});
}

double eta_impl(const std::function<double(double)>& eta_tilde_fn, double m, double c, int k) {
  if (m < 0.0) throw std::domain_error("eta requires a nonnegative mass");
  if (c < 1.0) throw std::invalid_argument("deformation constant must satisfy c >= 1");
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  if (m == 0.0) return 0.0;
  if (k == 0) return c * eta_tilde_fn(c * m);
  auto objective = [&](double eps) {
    return eta_tilde_fn(c * m * std::pow(eps, -static_cast<double>(k))) + eps;
  };
  return c * minimize_over_eps(objective);
}

}  // namespace

double eta(const CostFunction& h, double m, double c, int k) {
  return eta_impl([&](double s) { return eta_tilde(h, s); }, m, c, k);
}

double eta_star(const CostFunction& h, double m, double c, int k) {
  auto tilde_star = [&](double s) { return s == 0.0 ? 0.0 : h.inverse(s) / s; };
  return eta_impl(tilde_star, m, c, k);
}

}  // namespace flatchain
