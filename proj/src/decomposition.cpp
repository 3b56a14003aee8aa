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

#include "flatchain/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "flatchain/union_find.hpp"

namespace flatchain {

namespace {

constexpr std::size_t kEnumerationSupportCap = 12;
constexpr std::size_t kExhaustiveBipartitionCap = 20;

double validity_tolerance(const Chain& a) {
  if (a.group().exact()) {
    // slacks are integer multiples of the face weight
    const double quantum = a.degree() >= 1 ? std::pow(a.spacing(), a.degree() - 1) : 1.0;
    return 0.25 * quantum;
  }
  return kRealTolerance * std::max(1.0, normal_mass(a));
}

struct FaceData {
  // (cell index, signed coefficient) for every incident support cell.
  std::vector<std::pair<int, GroupValue>> contribs;
  double total_norm = 0.0;
};

struct Incidence {
  std::vector<Cell> cells;  // sorted support
  std::vector<GroupValue> coefs;
  std::vector<double> norms;
  std::vector<FaceData> faces;  // only faces with at least one contribution
  double face_weight = 1.0;     // spacing^(k-1)
  double cell_weight = 1.0;     // spacing^k
};

Incidence build_incidence(const Chain& a) {
  Incidence inc;
  inc.cell_weight = std::pow(a.spacing(), a.degree());
  inc.face_weight = a.degree() >= 1 ? std::pow(a.spacing(), a.degree() - 1) : 1.0;
  for (const auto& [cell, g] : a.coefficients()) {
    inc.cells.push_back(cell);
    inc.coefs.push_back(g);
    inc.norms.push_back(g.norm());
  }
  if (a.degree() >= 1) {
    std::map<Cell, std::vector<std::pair<int, GroupValue>>> by_face;
    for (std::size_t i = 0; i < inc.cells.size(); ++i) {
      for (const auto& [face, sign] : cell_boundary_faces(inc.cells[i])) {
        by_face[face].emplace_back(static_cast<int>(i),
                                   sign > 0 ? inc.coefs[i] : -inc.coefs[i]);
      }
    }
    for (auto& [face, contribs] : by_face) {
      FaceData fd;
      fd.contribs = std::move(contribs);
      GroupValue total = GroupValue::zero(a.group());
      for (const auto& [idx, w] : fd.contribs) total = total + w;
      fd.total_norm = total.norm();
      inc.faces.push_back(std::move(fd));
    }
  }
  return inc;
}

// Boundary-mass slack of an assignment of cells to parts:
//   sum_f [ sum_p |s_p(f)| - |s(f)| ] * face_weight  (always >= 0).
// Stops early once the slack exceeds the cap.
double assignment_slack(const Incidence& inc, const std::vector<int>& part_of_cell, int num_parts,
                        const Group& group, double cap) {
  double slack = 0.0;
  std::vector<GroupValue> part_sum(static_cast<std::size_t>(num_parts), GroupValue::zero(group));
  std::vector<int> touched;
  for (const FaceData& face : inc.faces) {
    touched.clear();
    for (const auto& [cell, w] : face.contribs) {
      const int p = part_of_cell[static_cast<std::size_t>(cell)];
      if (std::find(touched.begin(), touched.end(), p) == touched.end()) touched.push_back(p);
      part_sum[static_cast<std::size_t>(p)] = part_sum[static_cast<std::size_t>(p)] + w;
    }
    double sum_norms = 0.0;
    for (const int p : touched) {
      sum_norms += part_sum[static_cast<std::size_t>(p)].norm();
      part_sum[static_cast<std::size_t>(p)] = GroupValue::zero(group);
    }
    slack += (sum_norms - face.total_norm) * inc.face_weight;
    if (slack > cap) return slack;
  }
  return slack;
}

CellPartition sorted_partition(CellPartition partition) {
  std::erase_if(partition, [](const CellSet& s) { return s.empty(); });
  std::sort(partition.begin(), partition.end(),
            [](const CellSet& x, const CellSet& y) { return *x.begin() < *y.begin(); });
  return partition;
}

// Map each support cell to its forced-merge class index, plus class count.
std::pair<std::vector<int>, int> forced_merge_classes(const Chain& a, const Incidence& inc) {
  UnionFind uf(inc.cells.size());
  for (const FaceData& face : inc.faces) {
    if (face.contribs.size() != 2) continue;
    const auto& [i, wi] = face.contribs[0];
    const auto& [j, wj] = face.contribs[1];
    const double sum_norm = wi.norm() + wj.norm();
    const bool strict_violation =
        a.group().exact() ? face.total_norm < sum_norm - 0.5
                          : face.total_norm < sum_norm - kRealTolerance * std::max(1.0, sum_norm);
    if (strict_violation) uf.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  std::vector<int> class_of(inc.cells.size(), -1);
  int next = 0;
  std::map<std::size_t, int> roots;
  for (std::size_t i = 0; i < inc.cells.size(); ++i) {
    const std::size_t root = uf.find(i);
    auto [it, inserted] = roots.emplace(root, next);
    if (inserted) ++next;
    class_of[i] = it->second;
  }
  return {class_of, next};
}

}  // namespace

bool is_set_decomposition(const Chain& a, const CellPartition& partition) {
  // Disjointness is a hard precondition.
  std::map<Cell, int> block_of;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    for (const Cell& cell : partition[b]) {
      if (!block_of.emplace(cell, static_cast<int>(b)).second)
        throw std::invalid_argument("partition blocks overlap at cell " + format_cell(cell));
    }
  }
  for (const auto& [cell, g] : a.coefficients()) {
    if (!block_of.count(cell)) return false;  // does not cover the support
  }

  // Global route.
  double parts_normal = 0.0;
  for (const CellSet& block : partition) parts_normal += normal_mass(restrict_to(a, block));
  const double global_slack = parts_normal - normal_mass(a);

  // Face-local route.
  const Incidence inc = build_incidence(a);
  std::vector<int> part_of_cell(inc.cells.size(), 0);
  for (std::size_t i = 0; i < inc.cells.size(); ++i)
    part_of_cell[i] = block_of.at(inc.cells[i]);
  const double local_slack =
      assignment_slack(inc, part_of_cell, std::max<int>(1, static_cast<int>(partition.size())),
                       a.group(), std::numeric_limits<double>::infinity());

  const double tol = validity_tolerance(a);
  if (std::abs(global_slack - local_slack) > tol + 1e-9 * std::max(1.0, parts_normal))
    throw std::logic_error("set-decomposition validity routes disagree");
  return local_slack <= tol;
}

CellPartition forced_merges(const Chain& a) {
  const Incidence inc = build_incidence(a);
  const auto [class_of, count] = forced_merge_classes(a, inc);
  CellPartition classes(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < inc.cells.size(); ++i)
    classes[static_cast<std::size_t>(class_of[i])].insert(inc.cells[i]);
  return sorted_partition(std::move(classes));
}

namespace {

struct BlockFace {
  // Aggregated per-block contributions at one face; only blocks with a
  // nonzero aggregate appear.
  std::vector<std::pair<int, GroupValue>> contribs;
  double total_norm = 0.0;
  double sum_norms = 0.0;  // sum of |aggregate| over listed blocks
  int max_block = 0;
};

// Faces where separating blocks could break additivity (>= 2 nonzero
// block aggregates).
std::vector<BlockFace> active_block_faces(const Incidence& inc, const std::vector<int>& class_of,
                                          int num_blocks, const Group& group) {
  std::vector<BlockFace> out;
  std::vector<GroupValue> sums(static_cast<std::size_t>(num_blocks), GroupValue::zero(group));
  std::vector<int> touched;
  for (const FaceData& face : inc.faces) {
    touched.clear();
    for (const auto& [cell, w] : face.contribs) {
      const int b = class_of[static_cast<std::size_t>(cell)];
      if (sums[static_cast<std::size_t>(b)].is_zero() &&
          std::find(touched.begin(), touched.end(), b) == touched.end())
        touched.push_back(b);
      sums[static_cast<std::size_t>(b)] = sums[static_cast<std::size_t>(b)] + w;
    }
    BlockFace bf;
    bf.total_norm = face.total_norm;
    for (const int b : touched) {
      if (!sums[static_cast<std::size_t>(b)].is_zero()) {
        bf.sum_norms += sums[static_cast<std::size_t>(b)].norm();
        bf.contribs.emplace_back(b, sums[static_cast<std::size_t>(b)]);
        bf.max_block = std::max(bf.max_block, b);
      }
      sums[static_cast<std::size_t>(b)] = GroupValue::zero(group);
    }
    if (bf.contribs.size() >= 2) out.push_back(std::move(bf));
  }
  return out;
}

// Slack of a bipartition given per-face block aggregates. side[b] in {0,1}.
double bipartition_slack(const std::vector<BlockFace>& faces, const std::vector<char>& side,
                         const Group& group, double face_weight, double cap) {
  double slack = 0.0;
  for (const BlockFace& face : faces) {
    GroupValue s0 = GroupValue::zero(group);
    GroupValue s1 = GroupValue::zero(group);
    for (const auto& [b, w] : face.contribs) {
      if (side[static_cast<std::size_t>(b)])
        s1 = s1 + w;
      else
        s0 = s0 + w;
    }
    slack += (s0.norm() + s1.norm() - face.total_norm) * face_weight;
    if (slack > cap) return slack;
  }
  return slack;
}

struct BipartitionSearch {
  const std::vector<BlockFace>* faces;
  const Group* group;
  double face_weight = 1.0;
  double tol = 0.0;
  int num_blocks = 0;
  long long budget = 0;
  long long nodes = 0;
  std::vector<char> side;
  std::vector<std::vector<int>> faces_closed_at;  // face indices by max_block
  bool found = false;
  bool exhausted = false;

  // DFS over block sides; a face is checkable once its last block is
  // assigned. Prunes on any completed face that violates additivity.
  void dfs(int b, double slack) {
    if (found || exhausted) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    if (b == num_blocks) {
      // Nontrivial: block 0 is pinned to side 0, so just need some 1.
      for (int i = 1; i < num_blocks; ++i) {
        if (side[static_cast<std::size_t>(i)]) {
          found = true;
          return;
        }
      }
      return;
    }
    for (const char s : {char(0), char(1)}) {
      side[static_cast<std::size_t>(b)] = s;
      double next_slack = slack;
      bool ok = true;
      for (const int f : faces_closed_at[static_cast<std::size_t>(b)]) {
        GroupValue s0 = GroupValue::zero(*group);
        GroupValue s1 = GroupValue::zero(*group);
        for (const auto& [blk, w] : (*faces)[static_cast<std::size_t>(f)].contribs) {
          if (side[static_cast<std::size_t>(blk)])
            s1 = s1 + w;
          else
            s0 = s0 + w;
        }
        next_slack += (s0.norm() + s1.norm() - (*faces)[static_cast<std::size_t>(f)].total_norm) *
                      face_weight;
        if (next_slack > tol) {
          ok = false;
          break;
        }
      }
      if (ok) dfs(b + 1, next_slack);
      if (found || exhausted) return;
    }
  }
};

}  // namespace

namespace {

// Shared-budget worker; decrements `budget` by the nodes it consumes.
AtomReport is_indecomposable_impl(const Chain& a, long long& budget) {
  AtomReport report;
  report.status = SearchStatus::decided;

  if (a.support_size() <= 1) {
    report.is_atom = true;  // zero chains and single cells only decompose trivially
    return report;
  }

  const Incidence inc = build_incidence(a);
  const auto [class_of, num_blocks] = forced_merge_classes(a, inc);
  if (num_blocks == 1) {
    report.is_atom = true;
    return report;
  }

  const std::vector<BlockFace> faces =
      active_block_faces(inc, class_of, num_blocks, a.group());
  const double tol = validity_tolerance(a);

  auto witness_from_side = [&](const std::vector<char>& side) {
    CellSet s0, s1;
    for (std::size_t i = 0; i < inc.cells.size(); ++i) {
      (side[static_cast<std::size_t>(class_of[i])] ? s1 : s0).insert(inc.cells[i]);
    }
    report.witness = sorted_partition({std::move(s0), std::move(s1)});
    report.is_atom = false;
  };

  if (faces.empty()) {
    // No interaction between classes: any bipartition is valid.
    std::vector<char> side(static_cast<std::size_t>(num_blocks), 0);
    side.back() = 1;
    witness_from_side(side);
    return report;
  }

  if (static_cast<std::size_t>(num_blocks) <= kExhaustiveBipartitionCap) {
    std::vector<char> side(static_cast<std::size_t>(num_blocks), 0);
    const std::uint64_t limit = std::uint64_t{1} << (num_blocks - 1);
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
      if (--budget < 0) {
        report.status = SearchStatus::budget_exhausted;
        return report;
      }
      for (int b = 1; b < num_blocks; ++b)
        side[static_cast<std::size_t>(b)] = (mask >> (b - 1)) & 1u;
      if (bipartition_slack(faces, side, a.group(), inc.face_weight, tol) <= tol) {
        witness_from_side(side);
        return report;
      }
    }
    report.is_atom = true;
    return report;
  }

  BipartitionSearch search;
  search.faces = &faces;
  search.group = &a.group();
  search.face_weight = inc.face_weight;
  search.tol = tol;
  search.num_blocks = num_blocks;
  search.budget = std::max<long long>(budget, 0);
  search.side.assign(static_cast<std::size_t>(num_blocks), 0);
  search.faces_closed_at.assign(static_cast<std::size_t>(num_blocks), {});
  for (std::size_t f = 0; f < faces.size(); ++f)
    search.faces_closed_at[static_cast<std::size_t>(faces[f].max_block)].push_back(
        static_cast<int>(f));
  search.side[0] = 0;
  search.dfs(1, 0.0);
  budget -= search.nodes;
  if (search.exhausted) {
    report.status = SearchStatus::budget_exhausted;
    return report;
  }
  if (search.found) {
    witness_from_side(search.side);
  } else {
    report.is_atom = true;
  }
  return report;
}

}  // namespace

AtomReport is_indecomposable(const Chain& a, long long budget) {
  long long counter = budget;
  return is_indecomposable_impl(a, counter);
}

Decomposition maximal_decomposition(const Chain& a, long long budget) {
  Decomposition out;
  out.parent = a;
  out.status = SearchStatus::decided;

  std::vector<CellSet> final_blocks;
  std::vector<CellSet> pending;
  if (!a.is_zero()) pending.push_back(support(a));
  long long remaining = budget;
  while (!pending.empty()) {
    CellSet block = std::move(pending.back());
    pending.pop_back();
    const Chain part = restrict_to(a, block);
    const AtomReport report = is_indecomposable_impl(part, remaining);
    if (report.status == SearchStatus::budget_exhausted) {
      out.status = SearchStatus::budget_exhausted;
      out.partition = {support(a)};
      out.parts = {a};
      out.valid = true;
      out.all_atoms = false;
      return out;
    }
    if (report.is_atom) {
      final_blocks.push_back(std::move(block));
    } else {
      for (const CellSet& sub : report.witness) pending.push_back(sub);
    }
  }
  out.partition = sorted_partition(std::move(final_blocks));
  out.parts.reserve(out.partition.size());
  for (const CellSet& block : out.partition) out.parts.push_back(restrict_to(a, block));
  out.valid = a.is_zero() ? true : is_set_decomposition(a, out.partition);
  out.all_atoms = true;
  return out;
}

double nu_value(const Chain& a, const CostFunction& h) {
  return h_mass(a, h) + normal_mass(a);
}

CostFunction default_cost(const Chain& a) {
  std::vector<std::pair<double, double>> samples;
  const double volume = std::pow(a.spacing(), a.degree());
  for (const auto& [cell, g] : a.coefficients()) samples.emplace_back(g.norm(), volume);
  return construct_h(band_masses(samples));
}

namespace {

// Enumerates set partitions of the forced-merge classes in restricted
// growth order and reports the valid ones. The callback receives the cell
// partition together with per-part nu values.
struct PartitionEnumerator {
  const Chain* chain;
  const CostFunction* h;
  Incidence inc;
  std::vector<int> class_of;
  int num_blocks = 0;
  // per-class mass and h-mass aggregates
  std::vector<double> class_mass, class_hmass;

  template <typename Fn>
  void run(Fn&& fn) {
    if (num_blocks == 0) return;
    std::vector<int> part_of_block(static_cast<std::size_t>(num_blocks), 0);
    enumerate(1, 1, part_of_block, fn);
  }

  template <typename Fn>
  void enumerate(int index, int used, std::vector<int>& part_of_block, Fn& fn) {
    if (index == num_blocks) {
      emit(part_of_block, used, fn);
      return;
    }
    for (int p = 0; p <= used && p < num_blocks; ++p) {
      part_of_block[static_cast<std::size_t>(index)] = p;
      enumerate(index + 1, std::max(used, p + 1), part_of_block, fn);
    }
  }

  template <typename Fn>
  void emit(const std::vector<int>& part_of_block, int num_parts, Fn& fn) {
    std::vector<int> part_of_cell(inc.cells.size());
    for (std::size_t i = 0; i < inc.cells.size(); ++i)
      part_of_cell[i] = part_of_block[static_cast<std::size_t>(class_of[i])];

    const double tol = validity_tolerance(*chain);
    if (assignment_slack(inc, part_of_cell, num_parts, chain->group(), tol) > tol) return;

    // nu per part: cell-local masses plus the per-part boundary mass.
    std::vector<double> nu(static_cast<std::size_t>(num_parts), 0.0);
    for (std::size_t i = 0; i < inc.cells.size(); ++i) {
      const double hn = h ? h->eval(inc.norms[i]) : 0.0;
      nu[static_cast<std::size_t>(part_of_cell[i])] += (inc.norms[i] + hn) * inc.cell_weight;
    }
    std::vector<GroupValue> sums(static_cast<std::size_t>(num_parts),
                                 GroupValue::zero(chain->group()));
    std::vector<int> touched;
    for (const FaceData& face : inc.faces) {
      touched.clear();
      for (const auto& [cell, w] : face.contribs) {
        const int p = part_of_cell[static_cast<std::size_t>(cell)];
        if (sums[static_cast<std::size_t>(p)].is_zero() &&
            std::find(touched.begin(), touched.end(), p) == touched.end())
          touched.push_back(p);
        sums[static_cast<std::size_t>(p)] = sums[static_cast<std::size_t>(p)] + w;
      }
      for (const int p : touched) {
        nu[static_cast<std::size_t>(p)] += sums[static_cast<std::size_t>(p)].norm() * inc.face_weight;
        sums[static_cast<std::size_t>(p)] = GroupValue::zero(chain->group());
      }
    }
    fn(part_of_cell, num_parts, nu);
  }
};

PartitionEnumerator make_enumerator(const Chain& a, const CostFunction* h) {
  if (a.support_size() > kEnumerationSupportCap)
    throw resource_error("exhaustive decomposition enumeration capped at 12 support cells");
  PartitionEnumerator e;
  e.chain = &a;
  e.h = h;
  e.inc = build_incidence(a);
  auto [class_of, num_blocks] = forced_merge_classes(a, e.inc);
  e.class_of = std::move(class_of);
  e.num_blocks = num_blocks;
  return e;
}

CellPartition partition_from_assignment(const Incidence& inc, const std::vector<int>& part_of_cell,
                                        int num_parts) {
  CellPartition partition(static_cast<std::size_t>(num_parts));
  for (std::size_t i = 0; i < inc.cells.size(); ++i)
    partition[static_cast<std::size_t>(part_of_cell[i])].insert(inc.cells[i]);
  return partition;
}

}  // namespace

double q_value(const Chain& a, const CostFunction& h) {
  if (a.is_zero()) return 0.0;
  PartitionEnumerator e = make_enumerator(a, &h);
  double best = std::numeric_limits<double>::infinity();
  e.run([&](const std::vector<int>&, int, const std::vector<double>& nu) {
    double worst = 0.0;
    for (double v : nu) worst = std::max(worst, v);
    best = std::min(best, worst);
  });
  return best;
}

std::pair<Chain, Chain> extract_atom(const Chain& a, const CostFunction& h) {
  Chain current = a;
  while (current.support_size() > 1) {
    const AtomReport atom_check = is_indecomposable(current);
    if (atom_check.status == SearchStatus::decided && atom_check.is_atom) break;
    // q-optimal decomposition among the nontrivial valid ones (for a
    // non-atom the q minimizer is nontrivial: parts' nu add up strictly).
    PartitionEnumerator e = make_enumerator(current, &h);
    double best_q = std::numeric_limits<double>::infinity();
    std::vector<int> best_assignment;
    int best_parts = 0;
    e.run([&](const std::vector<int>& part_of_cell, int num_parts, const std::vector<double>& nu) {
      if (num_parts < 2) return;
      double worst = 0.0;
      for (double v : nu) worst = std::max(worst, v);
      if (worst < best_q - 1e-15) {
        best_q = worst;
        best_assignment = part_of_cell;
        best_parts = num_parts;
      }
    });
    if (best_parts < 2) break;  // float-degenerate fallback; should not happen
    // Follow the part with the largest q; ties to the lowest part index.
    const CellPartition parts =
        partition_from_assignment(e.inc, best_assignment, best_parts);
    double max_part_q = -1.0;
    int pick = 0;
    for (int p = 0; p < best_parts; ++p) {
      const double qp = q_value(restrict_to(current, parts[static_cast<std::size_t>(p)]), h);
      if (qp > max_part_q + 1e-15) {
        max_part_q = qp;
        pick = p;
      }
    }
    current = restrict_to(current, parts[static_cast<std::size_t>(pick)]);
  }
  // Remainder: everything outside the atom's support.
  CellSet complement;
  const CellSet atom_support = support(current);
  for (const auto& [cell, g] : a.coefficients()) {
    if (!atom_support.count(cell)) complement.insert(cell);
  }
  return {current, restrict_to(a, complement)};
}

Decomposition decompose_lex(const Chain& a) {
  Decomposition out;
  out.parent = a;
  out.status = SearchStatus::decided;
  if (a.is_zero()) {
    out.valid = true;
    out.all_atoms = true;
    return out;
  }
  PartitionEnumerator e = make_enumerator(a, nullptr);

  // Lexicographic comparison of nonincreasing normal-mass sequences; the
  // shorter sequence is padded with zeros.
  std::vector<double> best_key;
  std::vector<int> best_assignment;
  int best_parts = 0;
  e.run([&](const std::vector<int>& part_of_cell, int num_parts, const std::vector<double>& nu_vals) {
    // nu was computed without h, so it is exactly the normal mass per part.
    std::vector<double> key = nu_vals;
    std::sort(key.begin(), key.end(), std::greater<>());
    bool better = best_assignment.empty();
    if (!better) {
      const std::size_t len = std::max(key.size(), best_key.size());
      for (std::size_t i = 0; i < len; ++i) {
        const double x = i < key.size() ? key[i] : 0.0;
        const double y = i < best_key.size() ? best_key[i] : 0.0;
        if (x < y - 1e-12) {
          better = true;
          break;
        }
        if (x > y + 1e-12) break;
      }
    }
    if (better) {
      best_key = std::move(key);
      best_assignment = part_of_cell;
      best_parts = num_parts;
    }
  });

  CellPartition partition = partition_from_assignment(e.inc, best_assignment, best_parts);
  // Order parts by nonincreasing normal mass, ties by smallest cell.
  std::vector<std::pair<double, CellSet>> ranked;
  for (CellSet& block : partition) {
    if (block.empty()) continue;
    ranked.emplace_back(normal_mass(restrict_to(a, block)), std::move(block));
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return *x.second.begin() < *y.second.begin();
  });
  out.partition.clear();
  for (auto& [nm, block] : ranked) out.partition.push_back(std::move(block));
  out.parts.reserve(out.partition.size());
  for (const CellSet& block : out.partition) out.parts.push_back(restrict_to(a, block));
  out.valid = is_set_decomposition(a, out.partition);
  out.all_atoms = true;
  for (const Chain& part : out.parts) {
    const AtomReport report = is_indecomposable(part);
    if (!(report.status == SearchStatus::decided && report.is_atom)) out.all_atoms = false;
  }
  return out;
}

}  // namespace flatchain
