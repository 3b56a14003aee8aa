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
//
// Acceptance suite: one criterion per section, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "flatchain/bv_coarea.hpp"
#include "flatchain/decomposition.hpp"
#include "flatchain/deform.hpp"
#include "flatchain/flat_norm.hpp"
#include "test_support.hpp"

using namespace flatchain;
using namespace flatchain::testing;

namespace {

int g_failed = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
  if (!pass) ++g_failed;
}

// ---------- criterion 1: exact discrete coarea identity ----------

void criterion_1() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> value(-5, 5);
  bool ok = true;
  for (int trial = 0; trial < 500; ++trial) {
    Raster f({16, 16});
    for (std::int64_t i = 0; i < f.size(); ++i) f[i] = static_cast<double>(value(rng));
    const CoareaReport r = coarea_check(f);
    if (!r.exact || !r.equal) ok = false;
  }
  report(1, ok, "coarea identity exact on 500 random 16x16 integer rasters");
}

// ---------- criteria 2 and 3: finest partition against brute force ----------

struct SmallRaster {
  Raster f;
  std::vector<Site> sites;            // nonzero sites
  std::vector<std::array<int, 2>> edges;  // index pairs of adjacent nonzero sites
  std::vector<double> single_mass;    // per nonzero site: sum over faces with a
                                      // zero/exterior partner of |f(site)|
  double tv_f = 0.0;
};

SmallRaster analyze(Raster f) {
  SmallRaster out;
  out.f = std::move(f);
  std::map<Site, int> index;
  for (std::int64_t i = 0; i < out.f.size(); ++i) {
    if (out.f[i] != 0.0) {
      index[out.f.multi_index(i)] = static_cast<int>(out.sites.size());
      out.sites.push_back(out.f.multi_index(i));
    }
  }
  out.single_mass.assign(out.sites.size(), 0.0);
  for (std::size_t i = 0; i < out.sites.size(); ++i) {
    const double v = out.f.at(out.sites[i]);
    for (std::size_t d = 0; d < out.sites[i].size(); ++d) {
      for (int step : {-1, 1}) {
        Site q = out.sites[i];
        q[d] += step;
        auto it = index.find(q);
        if (it == index.end()) {
          out.single_mass[i] += std::abs(v);
        } else if (step == 1) {
          out.edges.push_back({static_cast<int>(i), it->second});
        }
      }
    }
  }
  out.tv_f = tv(out.f);
  return out;
}

// Direct evaluation of sum_S tv(1_S f) for a block assignment: faces inside
// a block contribute |a-b|, faces across blocks or against zero contribute
// |a| + |b| (each side to its own block).
double partition_tv_sum(const SmallRaster& r, const std::vector<int>& block_of) {
  double total = 0.0;
  for (std::size_t i = 0; i < r.sites.size(); ++i) total += r.single_mass[i];
  for (const auto& [i, j] : r.edges) {
    const double a = r.f.at(r.sites[static_cast<std::size_t>(i)]);
    const double b = r.f.at(r.sites[static_cast<std::size_t>(j)]);
    total += block_of[static_cast<std::size_t>(i)] == block_of[static_cast<std::size_t>(j)]
                 ? std::abs(a - b)
                 : std::abs(a) + std::abs(b);
  }
  return total;
}

// Enumerate restricted-growth strings over n items.
template <typename Fn>
void for_each_rgs(int n, Fn&& fn) {
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  if (n == 0) return;
  while (true) {
    fn(a);
    int i = n - 1;
    for (; i > 0; --i) {
      int max_prefix = -1;
      for (int j = 0; j < i; ++j) max_prefix = std::max(max_prefix, a[static_cast<std::size_t>(j)]);
      if (a[static_cast<std::size_t>(i)] <= max_prefix) {
        ++a[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(j)] = 0;
        break;
      }
    }
    if (i == 0) break;
  }
}

struct Criterion23Stats {
  long long rasters = 0;
  long long partitions = 0;
  long long additive = 0;
  bool ok2 = true;
  bool ok3 = true;
};

void check_raster_2_3(const Raster& f, Criterion23Stats& stats) {
  const SmallRaster r = analyze(f);
  if (r.sites.empty()) return;
  ++stats.rasters;

  const SitePartition finest = finest_partition(r.f);
  if (!tv_additive(r.f, finest)) stats.ok2 = false;
  std::vector<int> finest_of(r.sites.size(), -1);
  for (std::size_t b = 0; b < finest.size(); ++b) {
    for (std::size_t i = 0; i < r.sites.size(); ++i) {
      if (finest[b].count(r.sites[i])) finest_of[i] = static_cast<int>(b);
    }
  }

  for_each_rgs(static_cast<int>(r.sites.size()), [&](const std::vector<int>& block_of) {
    ++stats.partitions;
    const double sum = partition_tv_sum(r, block_of);
    const bool additive = std::abs(sum - r.tv_f) <= 1e-9 * std::max(1.0, r.tv_f);
    if (additive) {
      ++stats.additive;
      // finest must refine this partition: same finest block => same block
      std::map<int, int> image;
      for (std::size_t i = 0; i < r.sites.size(); ++i) {
        auto [it, inserted] = image.emplace(finest_of[i], block_of[i]);
        if (!inserted && it->second != block_of[i]) stats.ok2 = false;
      }
      // spot cross-check with the public masked-raster route
      if (stats.additive % 97 == 0) {
        int parts = 0;
        for (int b : block_of) parts = std::max(parts, b + 1);
        SitePartition p(static_cast<std::size_t>(parts));
        for (std::size_t i = 0; i < r.sites.size(); ++i)
          p[static_cast<std::size_t>(block_of[i])].insert(r.sites[i]);
        if (!tv_additive(r.f, p)) stats.ok2 = false;
        if (!refines(finest, p)) stats.ok2 = false;
      }
    }
  });

  // criterion 3: maximal decomposition of the chain matches the partition
  const Chain a = raster_to_chain(r.f);
  const Decomposition d = maximal_decomposition(a);
  if (!(d.status == SearchStatus::decided && d.valid && d.all_atoms)) {
    stats.ok3 = false;
    return;
  }
  if (d.partition.size() != finest.size()) {
    stats.ok3 = false;
    return;
  }
  for (std::size_t b = 0; b < d.partition.size(); ++b) {
    SiteSet sites;
    for (const Cell& cell : d.partition[b]) sites.insert(cell.anchor);
    if (sites != finest[b]) stats.ok3 = false;
  }
}

void criteria_2_3() {
  Criterion23Stats stats;
  // Exhaustive sign patterns over the 3x3 grid, magnitudes 1 and an
  // alternating 1/2 mask; plus random +-{1,2} rasters.
  for (int mask = 0; mask < 2; ++mask) {
    std::vector<int> digits(9, 0);
    while (true) {
      Raster f({3, 3});
      for (int i = 0; i < 9; ++i) {
        const int sign = digits[static_cast<std::size_t>(i)] - 1;  // {-1,0,1}
        const double magnitude = mask == 0 ? 1.0 : (i % 2 == 0 ? 2.0 : 1.0);
        f[i] = sign * magnitude;
      }
      check_raster_2_3(f, stats);
      int i = 8;
      for (; i >= 0; --i) {
        if (++digits[static_cast<std::size_t>(i)] <= 2) break;
        digits[static_cast<std::size_t>(i)] = 0;
      }
      if (i < 0) break;
    }
  }
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    Raster f({3, 3});
    for (int i = 0; i < 9; ++i) {
      const int sign = static_cast<int>(rng() % 3) - 1;
      const double magnitude = 1.0 + static_cast<double>(rng() % 2);
      f[i] = sign * magnitude;
    }
    check_raster_2_3(f, stats);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "finest partition is the least tv-additive one (%lld rasters, %lld partitions)",
                stats.rasters, stats.partitions);
  report(2, stats.ok2, buf);
  std::snprintf(buf, sizeof buf,
                "maximal_decomposition agrees with finest_partition on the same suite");
  report(3, stats.ok3, buf);
}

// ---------- criterion 4: the cross has two distinct maximal decompositions ----------

void criterion_4() {
  const Chain a = cross_chain();
  const CellPartition hv = {cross_horizontal(), cross_vertical()};
  const CellPartition pm = {cross_upper(), cross_lower()};
  bool ok = hv != pm;
  for (const CellPartition& p : {hv, pm}) {
    if (!is_set_decomposition(a, p)) ok = false;
    for (const CellSet& block : p) {
      const AtomReport r = is_indecomposable(restrict_to(a, block));
      if (!(r.status == SearchStatus::decided && r.is_atom)) ok = false;
    }
  }
  report(4, ok, "cross chain: {Ah,Av} and {A+,A-} are distinct all-atom decompositions");
}

// ---------- criterion 5: the doubled loop is an atom ----------

void criterion_5() {
  const Chain loop = square_loop(2);
  const AtomReport r = is_indecomposable(loop);
  bool ok = r.status == SearchStatus::decided && r.is_atom;
  // independent exhaustive route: every bipartition of the 4 cells fails
  const CellSet support_set = support(loop);
  const std::vector<Cell> cells(support_set.begin(), support_set.end());
  for (unsigned mask = 1; mask + 1 < (1u << cells.size()); ++mask) {
    CellSet s0, s1;
    for (std::size_t i = 0; i < cells.size(); ++i)
      ((mask >> i) & 1u ? s1 : s0).insert(cells[i]);
    if (is_set_decomposition(loop, {s0, s1})) ok = false;
  }
  report(5, ok, "multiplicity-2 square loop is set-indecomposable (exhaustive)");
}

// ---------- criterion 6: 0-chains decompose into singletons ----------

void criterion_6() {
  std::mt19937_64 rng(6006);
  bool ok = true;
  for (int trial = 0; trial < 10; ++trial) {
    const int points = 2 + static_cast<int>(rng() % 5);
    Chain a(2, 0, 1.0, Group::real());
    std::set<std::vector<int>> used;
    for (int p = 0; p < points; ++p) {
      std::vector<int> site = {static_cast<int>(rng() % 7), static_cast<int>(rng() % 7)};
      if (!used.insert(site).second) continue;
      double v = static_cast<double>(static_cast<int>(rng() % 9) - 4);
      if (v == 0.0) v = 1.0;
      a.set_coefficient(Cell{site, {}}, GroupValue::real(v));
    }
    const Decomposition maximal = maximal_decomposition(a);
    if (!(maximal.valid && maximal.all_atoms)) ok = false;
    if (maximal.parts.size() != a.support_size()) ok = false;
    for (const Chain& part : maximal.parts) {
      if (part.support_size() != 1) ok = false;
    }
    const Decomposition lex = decompose_lex(a);
    std::multiset<long long> lhs, rhs;
    for (const Chain& part : maximal.parts) lhs.insert(std::llround(1024.0 * normal_mass(part)));
    for (const Chain& part : lex.parts) rhs.insert(std::llround(1024.0 * normal_mass(part)));
    if (lhs != rhs) ok = false;
  }
  report(6, ok, "0-chains: singleton atoms from maximal_decomposition, same multiset from lex");
}

// ---------- criterion 7: the Appendix-A construction ----------

std::vector<double> oracle_b(const BandMasses& a, int depth) {
  const double total = a.total();
  std::vector<double> b(static_cast<std::size_t>(depth) + 1, 1.0);
  std::vector<std::pair<long long, double>> anchors{{0, 1.0}};
  long long prev = 0;
  for (int l = 1; prev < depth; ++l) {
    auto tail = [&](long long m) {
      double t = 0.0;
      for (std::size_t i = static_cast<std::size_t>(m) + 1; i < a.a.size(); ++i) t += a.a[i];
      return t;
    };
    long long unforced = 0;
    while (unforced < static_cast<long long>(a.a.size()) &&
           tail(unforced) > std::exp2(-l) * total)
      ++unforced;
    prev = std::max(prev + 1, unforced);
    anchors.emplace_back(prev, static_cast<double>(l));
  }
  for (std::size_t s = 0; s + 1 < anchors.size(); ++s) {
    for (long long j = anchors[s].first; j <= std::min<long long>(anchors[s + 1].first, depth); ++j)
      b[static_cast<std::size_t>(j)] =
          anchors[s].second + (anchors[s + 1].second - anchors[s].second) *
                                  static_cast<double>(j - anchors[s].first) /
                                  static_cast<double>(anchors[s + 1].first - anchors[s].first);
  }
  return b;
}

void criterion_7() {
  constexpr double kSqrt2 = 1.4142135623730951;
  constexpr double kBand = 2.0 + kSqrt2;
  std::mt19937_64 rng(7007);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    // generating samples, then their band masses
    std::vector<std::pair<double, double>> samples;
    const int count = 10 + static_cast<int>(rng() % 40);
    for (int i = 0; i < count; ++i) {
      const double v =
          std::exp2(-static_cast<double>(rng() % 24)) * (0.5001 + 0.4999 * ((rng() % 1000) / 1000.0));
      samples.emplace_back(v, 0.25 + static_cast<double>(rng() % 8));
    }
    const BandMasses a = band_masses(samples);
    const CostFunction h = construct_h(a);
    const int depth = h.tail_index();
    const auto& c = h.slopes();
    const std::vector<double> b = oracle_b(a, depth);

    if (h.eval(0.0) != 0.0) ok = false;
    for (int j = 1; j <= depth; ++j) {
      if (!(c[static_cast<std::size_t>(j)] >= c[static_cast<std::size_t>(j) - 1] - 1e-12)) ok = false;
      if (!(c[static_cast<std::size_t>(j)] <= b[static_cast<std::size_t>(j)] + 1e-9)) ok = false;
    }
    for (int j = 0; j <= depth; ++j) {
      for (int i = 0; i + j <= depth; ++i) {
        if (!(c[static_cast<std::size_t>(i + j)] <=
              std::exp2(0.5 * i) * c[static_cast<std::size_t>(j)] + 1e-9))
          ok = false;
      }
    }
    // monotone with g >= 1
    double prev_val = 0.0;
    for (double s = 1e-10; s < 4.0; s *= 2.7) {
      const double val = h.eval(s);
      if (!(val > prev_val)) ok = false;
      prev_val = val;
      if (!(h.slope_at(s) >= 1.0 - 1e-12)) ok = false;
    }
    // band bound at 1000 points per band
    for (int j = 0; j <= depth; ++j) {
      const double lo = std::exp2(-j - 1), hi = std::exp2(-j);
      for (int t = 1; t <= 1000; ++t) {
        const double s = lo + (hi - lo) * t / 1000.0;
        if (!(h.eval(s) <= kBand * s * c[static_cast<std::size_t>(j)] + 1e-9)) ok = false;
      }
    }
    // integral comparison on the generating samples
    double integral = 0.0;
    for (const auto& [v, w] : samples) integral += h.eval(v) * w;
    double weighted = 0.0;
    for (std::size_t j = 0; j < a.a.size(); ++j) {
      const double cj = j <= static_cast<std::size_t>(depth)
                            ? c[j]
                            : h.tail_coefficient() * std::exp2(0.5 * (static_cast<double>(j) - depth));
      weighted += cj * a.a[j];
    }
    if (!(integral <= kBand * weighted + 1e-9)) ok = false;
  }
  report(7, ok, "construct_h: monotone concave, slope bounds, band and integral estimates");
}

// ---------- criterion 8: deformation splitting identity ----------

void criterion_8() {
  std::mt19937_64 rng(8008);
  bool ok = true;
  double worst_ratio = 0.0;
  int done = 0;
  while (done < 200) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int k = static_cast<int>(rng() % 3);
    if (k > n) continue;
    const int rho = 2 + static_cast<int>(rng() % 2);
    const Group group = (done % 3 == 0)   ? Group::real()
                        : (done % 3 == 1) ? Group::integer()
                                          : Group::integer_mod(5);
    const Chain a = random_chain(rng, n, k, 4 + static_cast<int>(rng() % 6), 7, 2, group);
    if (a.is_zero()) continue;
    std::vector<int> offset(static_cast<std::size_t>(n));
    for (int& o : offset) o = static_cast<int>(rng() % static_cast<unsigned>(rho));
    const DeformationResult d = deform(a, rho, offset);
    Chain residual = subtract(subtract(a, d.p), d.r);
    if (!d.s.is_zero()) residual = subtract(residual, boundary(d.s));
    if (!residual.is_zero()) ok = false;
    const double ratio = d.ratios.remainder_over_rho_eps_normal;
    if (!std::isfinite(ratio)) ok = false;
    worst_ratio = std::max(worst_ratio, ratio);
    ++done;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "A = P + R + dS exact on 200 random chains; max (e)-ratio %.3f", worst_ratio);
  report(8, ok, buf);
}

// ---------- criterion 9: isoperimetric inequality ----------

struct IsoInstance {
  double lhs = 0.0, mass_a = 0.0, hmass_a = 0.0, normal_a = 0.0;
};

Chain random_walk_chain(std::mt19937_64& rng, int grid, int max_cells) {
  Chain a(2, 1, 1.0, Group::integer());
  int x = static_cast<int>(rng() % static_cast<unsigned>(grid));
  int y = static_cast<int>(rng() % static_cast<unsigned>(grid));
  const int cells = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_cells - 1));
  for (int c = 0; c < cells; ++c) {
    const int axis = static_cast<int>(rng() % 2);
    int coef = static_cast<int>(rng() % 5) - 2;
    if (coef == 0) coef = 1;
    a.accumulate(Cell{{x, y}, {axis}}, GroupValue::integer(coef));
    // step to a neighbouring anchor, staying on the grid
    const int dir = rng() % 2 ? 1 : -1;
    if (rng() % 2) {
      x = std::clamp(x + dir, 0, grid - 1);
    } else {
      y = std::clamp(y + dir, 0, grid - 1);
    }
  }
  return a;
}

void criterion_9() {
  std::mt19937_64 rng(9009);
  const int kGrid = 16;
  FlatNormOptions options;
  options.margin = 2;

  auto make_suite = [&](int count) {
    std::vector<Chain> suite;
    while (static_cast<int>(suite.size()) < count) {
      Chain a = random_walk_chain(rng, kGrid, 10);
      if (!a.is_zero() && a.support_size() <= 12) suite.push_back(std::move(a));
    }
    return suite;
  };
  const std::vector<Chain> training = make_suite(100);
  const std::vector<Chain> testing = make_suite(100);

  // One cost for the whole family, built from the pooled coefficients. The
  // depth puts the analytic sqrt tail right after the data horizon (integer
  // coefficients only populate band 0), which keeps eta power-law small.
  std::vector<std::pair<double, double>> pooled;
  for (const Chain& a : training) {
    for (const auto& [cell, g] : a.coefficients()) pooled.emplace_back(g.norm(), 1.0);
  }
  const CostFunction h = construct_h(band_masses(pooled), /*depth=*/12);

  auto measure = [&](const std::vector<Chain>& suite) {
    std::vector<IsoInstance> out;
    for (const Chain& a : suite) {
      IsoInstance inst;
      inst.lhs = flat_norm(a, options).value;
      inst.mass_a = mass(a);
      inst.hmass_a = h_mass(a, h);
      inst.normal_a = normal_mass(a);
      out.push_back(inst);
    }
    return out;
  };
  const std::vector<IsoInstance> train_data = measure(training);
  const std::vector<IsoInstance> test_data = measure(testing);

  auto all_pass = [&](const std::vector<IsoInstance>& data, double c) {
    for (const IsoInstance& inst : data) {
      const double rhs = eta(h, inst.mass_a, c, 1) * (inst.hmass_a + inst.normal_a);
      if (inst.lhs > rhs + 1e-9 * std::max(1.0, rhs)) return false;
    }
    return true;
  };

  // calibrate: smallest c in [1, 2^20] passing the training suite, then a
  // 1.25x safety factor
  bool calibratable = all_pass(train_data, 1048576.0);
  double lo = 1.0, hi = 1048576.0;
  if (all_pass(train_data, lo)) hi = lo;
  for (int iter = 0; iter < 40 && calibratable; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (all_pass(train_data, mid))
      hi = mid;
    else
      lo = mid;
  }
  const double c_star = 1.25 * hi;
  const bool test_ok = calibratable && all_pass(test_data, c_star);

  // shrinking the support must not break the bound at the same constant
  bool restriction_ok = true;
  for (const Chain& a : testing) {
    CellSet keep;
    bool toggle = false;
    for (const auto& [cell, g] : a.coefficients()) {
      if ((toggle = !toggle)) keep.insert(cell);
    }
    const Chain restricted = restrict_to(a, keep);
    if (restricted.is_zero()) continue;
    const double lhs = flat_norm(restricted, options).value;
    const double rhs = eta(h, mass(restricted), c_star, 1) *
                       (h_mass(restricted, h) + normal_mass(restricted));
    if (lhs > rhs + 1e-9 * std::max(1.0, rhs)) restriction_ok = false;
  }

  const double eta_small = eta(h, 1e-12, c_star, 1);
  const bool eta_ok = eta_small < 1e-2;

  // Remark 3.3 exponent: log-log slope of eta_star for the sqrt cost.
  const CostFunction sqrt_h = CostFunction::sqrt_shape();
  auto fitted_slope = [&](int k) {
    std::vector<double> xs, ys;
    for (double m = 1e-6; m <= 1.0000001e-2; m *= 10.0) {
      xs.push_back(std::log(m));
      ys.push_back(std::log(eta_star(sqrt_h, m, 1.0, k)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  // (1-alpha)/(alpha+k(1-alpha)) at alpha = 1/2: 1/2 for k=1, 1/3 for k=2.
  const double slope1 = fitted_slope(1);
  const double slope2 = fitted_slope(2);
  const bool exponent_ok =
      std::abs(slope1 - 0.5) <= 0.05 * 0.5 && std::abs(slope2 - 1.0 / 3.0) <= 0.05 / 3.0;

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "isoperimetric bound holds on the test suite and its restrictions at "
                "calibrated c = %.3f; eta(1e-12) = %.2e; exponent fits %.4f (k=1 vs 1/2) "
                "and %.4f (k=2 vs 1/3)",
                c_star, eta_small, slope1, slope2);
  report(9, test_ok && restriction_ok && eta_ok && exponent_ok, buf);
}

// ---------- criterion 10: flat norm correctness ----------

void criterion_10() {
  bool ok = true;
  long long compared = 0;

  // exhaustive family: all chains with <= 3 support cells, coefficients in
  // {-2,...,2}\{0}, on the edges of a 3x3 vertex grid
  std::vector<Cell> edges;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x + 1 < 3) edges.push_back(Cell{{x, y}, {0}});
      if (y + 1 < 3) edges.push_back(Cell{{x, y}, {1}});
    }
  }
  const std::vector<int> coefs = {-2, -1, 1, 2};
  const int ne = static_cast<int>(edges.size());
  auto compare = [&](const Chain& a) {
    const Box region = support_box(a);
    const FlatNormCertificate exact = flat_norm_exact(a, region);
    const FlatNormCertificate lp = flat_norm_lp(embed_real(a), region);
    if (std::abs(exact.value - lp.value) > 1e-7) ok = false;
    ++compared;
  };
  for (int i = 0; i < ne; ++i) {
    for (int ci : coefs) {
      Chain a1(2, 1, 1.0, Group::integer());
      a1.set_coefficient(edges[static_cast<std::size_t>(i)], GroupValue::integer(ci));
      compare(a1);
      for (int j = i + 1; j < ne; ++j) {
        for (int cj : coefs) {
          Chain a2 = a1;
          a2.set_coefficient(edges[static_cast<std::size_t>(j)], GroupValue::integer(cj));
          compare(a2);
          for (int k = j + 1; k < ne; ++k) {
            for (int ck : coefs) {
              Chain a3 = a2;
              a3.set_coefficient(edges[static_cast<std::size_t>(k)], GroupValue::integer(ck));
              compare(a3);
            }
          }
        }
      }
    }
  }

  // all 1- and 2-cell chains on the 4x4 vertex grid
  std::vector<Cell> edges4;
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      if (x + 1 < 4) edges4.push_back(Cell{{x, y}, {0}});
      if (y + 1 < 4) edges4.push_back(Cell{{x, y}, {1}});
    }
  }
  const int ne4 = static_cast<int>(edges4.size());
  for (int i = 0; i < ne4; ++i) {
    for (int ci : coefs) {
      Chain a1(2, 1, 1.0, Group::integer());
      a1.set_coefficient(edges4[static_cast<std::size_t>(i)], GroupValue::integer(ci));
      compare(a1);
      for (int j = i + 1; j < ne4; ++j) {
        for (int cj : coefs) {
          Chain a2 = a1;
          a2.set_coefficient(edges4[static_cast<std::size_t>(j)], GroupValue::integer(cj));
          compare(a2);
        }
      }
    }
  }

  // random 3-6 cell chains on the same grid
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 2000; ++trial) {
    Chain a(2, 1, 1.0, Group::integer());
    const int cells = 3 + static_cast<int>(rng() % 4);
    while (static_cast<int>(a.support_size()) < cells) {
      const Cell& e = edges4[rng() % edges4.size()];
      int c = static_cast<int>(rng() % 5) - 2;
      if (c == 0) c = 1;
      a.set_coefficient(e, GroupValue::integer(c));
    }
    compare(a);
  }

  // norm axioms on 100 random pairs over a shared region
  const Box shared{{-1, -1}, {5, 5}};
  for (int trial = 0; trial < 100; ++trial) {
    const Chain a = random_chain(rng, 2, 1, 4, 4, 2, Group::real());
    const Chain b = random_chain(rng, 2, 1, 4, 4, 2, Group::real());
    const double fa = flat_norm_lp(a, shared).value;
    const double fb = flat_norm_lp(b, shared).value;
    const double fab = flat_norm_lp(add(a, b), shared).value;
    if (fab > fa + fb + 1e-7) ok = false;
    if (std::abs(flat_norm_lp(negate(a), shared).value - fa) > 1e-7) ok = false;
    if (!a.is_zero() && !(fa > 0.0)) ok = false;
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "LP equals exhaustive search on %lld integer chains; norm axioms on 100 pairs",
                compared);
  report(10, ok, buf);
}

// ---------- criterion 11: the abstract decomposition engine ----------

void criterion_11() {
  std::mt19937_64 rng(1111);
  bool ok = true;
  std::vector<Chain> fixtures;
  fixtures.push_back(cross_chain());
  fixtures.push_back(square_loop(2));
  fixtures.push_back(square_loop(1));
  {
    Chain collinear(2, 1, 1.0, Group::integer());
    collinear.set_coefficient(Cell{{0, 0}, {0}}, GroupValue::integer(1));
    collinear.set_coefficient(Cell{{1, 0}, {0}}, GroupValue::integer(1));
    fixtures.push_back(collinear);
    fixtures.push_back(raster_to_chain(Raster::from_rows({{1, -1}, {1, 1}})));
    Chain points(2, 0, 1.0, Group::integer());
    points.set_coefficient(Cell{{0, 0}, {}}, GroupValue::integer(2));
    points.set_coefficient(Cell{{3, 1}, {}}, GroupValue::integer(-1));
    points.set_coefficient(Cell{{1, 2}, {}}, GroupValue::integer(1));
    fixtures.push_back(points);
  }
  for (int extra = 0; extra < 10; ++extra) {
    Chain a = random_chain(rng, 2, 1, 4 + static_cast<int>(rng() % 5), 4);
    if (!a.is_zero() && a.support_size() <= 8) fixtures.push_back(std::move(a));
  }

  for (const Chain& a : fixtures) {
    const CostFunction h = default_cost(a);
    const double nu_a = nu_value(a, h);
    const double q_a = q_value(a, h);
    if (!(q_a <= nu_a + 1e-9)) ok = false;

    const auto [atom, remainder] = extract_atom(a, h);
    const AtomReport ar = is_indecomposable(atom);
    if (!(ar.status == SearchStatus::decided && ar.is_atom)) ok = false;
    if (!approx_equal(add(atom, remainder), a)) ok = false;
    if (!remainder.is_zero() && !(q_value(remainder, h) <= nu_value(atom, h) + 1e-9)) ok = false;

    // step-3 style repeated extraction
    Chain rest = a;
    CellPartition partition;
    double parts_nu = 0.0;
    int guard = 0;
    while (!rest.is_zero() && ++guard < 40) {
      const auto [piece, next] = extract_atom(rest, h);
      const AtomReport pr = is_indecomposable(piece);
      if (!(pr.status == SearchStatus::decided && pr.is_atom)) ok = false;
      partition.push_back(support(piece));
      parts_nu += nu_value(piece, h);
      rest = next;
    }
    if (!rest.is_zero()) ok = false;
    if (std::abs(parts_nu - nu_a) > 1e-9 * std::max(1.0, nu_a)) ok = false;
    if (!is_set_decomposition(a, partition)) ok = false;
  }
  report(11, ok, "q <= nu, verified big-atom extraction, terminating all-atom decomposition");
}

}  // namespace

int main() {
  criterion_1();
  criteria_2_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failed == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failed);
  return 1;
}
