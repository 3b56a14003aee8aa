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

#include "flatchain/bv_coarea.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "flatchain/union_find.hpp"

namespace flatchain {

namespace {

// Visits every face of the lattice graph that touches the raster's index box:
// pairs (p, q) with q = p + e_d, where either endpoint may lie one step
// outside the box (value 0 there). Each face is visited once.
template <typename Fn>
void for_each_face(const Raster& f, Fn&& fn) {
  const int n = f.dim();
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const std::vector<int> idx = f.multi_index(i);
    const double v = f[i];
    for (int d = 0; d < n; ++d) {
      std::vector<int> q = idx;
      q[static_cast<std::size_t>(d)] += 1;
      fn(idx, v, q, f.at(q));
      if (idx[static_cast<std::size_t>(d)] == 0) {
        std::vector<int> out = idx;
        out[static_cast<std::size_t>(d)] -= 1;
        fn(out, 0.0, idx, v);
      }
    }
  }
}

}  // namespace

double tv(const Raster& f) {
  double total = 0.0;
  for_each_face(f, [&](const Site&, double a, const Site&, double b) { total += std::abs(a - b); });
  return total;
}

std::int64_t perimeter(const SiteSet& sites) {
  std::int64_t cut = 0;
  for (const Site& p : sites) {
    for (std::size_t d = 0; d < p.size(); ++d) {
      for (int step : {-1, 1}) {
        Site q = p;
        q[d] += step;
        if (!sites.count(q)) ++cut;
      }
    }
  }
  return cut;
}

LevelSet level_set(const Raster& f, double t) {
  if (t == 0.0) throw std::domain_error("level_set threshold must be nonzero");
  LevelSet out;
  out.threshold = t;
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const double v = f[i];
    if ((t > 0.0 && v > t) || (t < 0.0 && v < t)) out.sites.insert(f.multi_index(i));
  }
  return out;
}

CoareaReport coarea_check(const Raster& f) {
  CoareaReport report;
  report.exact = f.integral();
  report.lhs = tv(f);

  // Distinct positive values ascending and negative values descending;
  // P(E_t) is constant between consecutive values, so one representative
  // threshold per gap suffices.
  std::vector<double> pos, neg;
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const double v = f[i];
    if (v > 0.0) pos.push_back(v);
    if (v < 0.0) neg.push_back(v);
  }
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  neg.erase(std::unique(neg.begin(), neg.end()), neg.end());

  double rhs = 0.0;
  std::int64_t rhs_exact = 0;
  double prev = 0.0;
  for (double v : pos) {
    const double t = 0.5 * (prev + v);
    const std::int64_t p = perimeter(level_set(f, t).sites);
    rhs += (v - prev) * static_cast<double>(p);
    if (report.exact) rhs_exact += static_cast<std::int64_t>(std::llround(v - prev)) * p;
    prev = v;
  }
  prev = 0.0;
  for (double v : neg) {
    const double t = 0.5 * (prev + v);
    const std::int64_t p = perimeter(level_set(f, t).sites);
    rhs += (prev - v) * static_cast<double>(p);
    if (report.exact) rhs_exact += static_cast<std::int64_t>(std::llround(prev - v)) * p;
    prev = v;
  }

  report.rhs = report.exact ? static_cast<double>(rhs_exact) : rhs;
  if (report.exact) {
    report.equal = static_cast<std::int64_t>(std::llround(report.lhs)) == rhs_exact;
  } else {
    report.equal = std::abs(report.lhs - report.rhs) <= 1e-9 * std::max(1.0, report.lhs);
  }
  return report;
}

std::vector<SiteSet> m_connected_components(const SiteSet& sites) {
  std::vector<Site> order(sites.begin(), sites.end());
  std::map<Site, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
  UnionFind uf(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t d = 0; d < order[i].size(); ++d) {
      Site q = order[i];
      q[d] += 1;
      auto it = index.find(q);
      if (it != index.end()) uf.unite(i, it->second);
    }
  }
  std::map<std::size_t, SiteSet> classes;
  for (std::size_t i = 0; i < order.size(); ++i) classes[uf.find(i)].insert(order[i]);
  std::vector<SiteSet> out;
  out.reserve(classes.size());
  for (auto& [root, block] : classes) out.push_back(std::move(block));
  std::sort(out.begin(), out.end(),
            [](const SiteSet& a, const SiteSet& b) { return *a.begin() < *b.begin(); });
  return out;
}

SitePartition finest_partition(const Raster& f) {
  std::vector<Site> order;
  std::map<Site, std::size_t> index;
  for (std::int64_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0.0) {
      Site s = f.multi_index(i);
      index[s] = order.size();
      order.push_back(std::move(s));
    }
  }
  UnionFind uf(order.size());

  std::vector<double> pos, neg;
  for (const Site& s : order) {
    const double v = f.at(s);
    (v > 0.0 ? pos : neg).push_back(v);
  }
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  neg.erase(std::unique(neg.begin(), neg.end()), neg.end());

  auto merge_components_at = [&](double t) {
    for (const SiteSet& component : m_connected_components(level_set(f, t).sites)) {
      auto it = component.begin();
      const std::size_t first = index.at(*it);
      for (++it; it != component.end(); ++it) uf.unite(first, index.at(*it));
    }
  };
  double prev = 0.0;
  for (double v : pos) {
    merge_components_at(0.5 * (prev + v));
    prev = v;
  }
  prev = 0.0;
  for (double v : neg) {
    merge_components_at(0.5 * (prev + v));
    prev = v;
  }

  std::map<std::size_t, SiteSet> classes;
  for (std::size_t i = 0; i < order.size(); ++i) classes[uf.find(i)].insert(order[i]);
  SitePartition out;
  out.reserve(classes.size());
  for (auto& [root, block] : classes) out.push_back(std::move(block));
  std::sort(out.begin(), out.end(),
            [](const SiteSet& a, const SiteSet& b) { return *a.begin() < *b.begin(); });
  return out;
}

SitePartition same_sign_components(const Raster& f) {
  std::vector<Site> order;
  std::map<Site, std::size_t> index;
  for (std::int64_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0.0) {
      Site s = f.multi_index(i);
      index[s] = order.size();
      order.push_back(std::move(s));
    }
  }
  UnionFind uf(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double v = f.at(order[i]);
    for (std::size_t d = 0; d < order[i].size(); ++d) {
      Site q = order[i];
      q[d] += 1;
      auto it = index.find(q);
      if (it != index.end() && v * f.at(q) > 0.0) uf.unite(i, it->second);
    }
  }
  std::map<std::size_t, SiteSet> classes;
  for (std::size_t i = 0; i < order.size(); ++i) classes[uf.find(i)].insert(order[i]);
  SitePartition out;
  out.reserve(classes.size());
  for (auto& [root, block] : classes) out.push_back(std::move(block));
  std::sort(out.begin(), out.end(),
            [](const SiteSet& a, const SiteSet& b) { return *a.begin() < *b.begin(); });
  return out;
}

Raster masked(const Raster& f, const SiteSet& sites) {
  Raster out(f.shape());
  for (const Site& s : sites) {
    if (f.in_bounds(s)) out.set(s, f.at(s));
  }
  return out;
}

bool tv_additive(const Raster& f, const SitePartition& partition, double tol) {
  double sum = 0.0;
  for (const SiteSet& block : partition) sum += tv(masked(f, block));
  return std::abs(sum - tv(f)) <= tol * std::max(1.0, tv(f));
}

bool refines(const SitePartition& p1, const SitePartition& p2) {
  std::map<Site, std::size_t> where;
  for (std::size_t j = 0; j < p2.size(); ++j) {
    for (const Site& s : p2[j]) {
      if (!where.emplace(s, j).second)
        throw std::invalid_argument("second partition has overlapping blocks");
    }
  }
  std::size_t covered = 0;
  for (const SiteSet& block : p1) {
    if (block.empty()) continue;
    auto it = where.find(*block.begin());
    if (it == where.end()) throw std::invalid_argument("partitions have different ground sets");
    for (const Site& s : block) {
      auto jt = where.find(s);
      if (jt == where.end()) throw std::invalid_argument("partitions have different ground sets");
      if (jt->second != it->second) return false;
    }
    covered += block.size();
  }
  std::size_t ground = 0;
  for (const SiteSet& block : p2) ground += block.size();
  if (covered != ground) throw std::invalid_argument("partitions have different ground sets");
  return true;
}

}  // namespace flatchain
