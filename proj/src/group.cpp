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

#include "flatchain/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flatchain {

namespace {

std::int64_t canonical_residue(std::int64_t x, int m) {
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

Group Group::integer_mod(int m) {
  if (m < 2) throw std::invalid_argument("integer_mod group requires modulus >= 2");
  return {GroupKind::integer_mod, m, 0};
}

Group Group::real_vector(int d) {
  if (d < 1) throw std::invalid_argument("real_vector group requires dimension >= 1");
  return {GroupKind::real_vector, 0, d};
}

std::string Group::name() const {
  switch (kind) {
    case GroupKind::real:
      return "R";
    case GroupKind::integer:
      return "Z";
    case GroupKind::integer_mod:
      return "Z/" + std::to_string(modulus);
    case GroupKind::real_vector:
      return "R^" + std::to_string(dim);
  }
  return "?";
}

std::optional<Group> Group::parse(const std::string& text) {
  if (text == "R") return real();
  if (text == "Z") return integer();
  if (text.rfind("Z/", 0) == 0) {
    try {
      int m = std::stoi(text.substr(2));
      if (m >= 2) return integer_mod(m);
    } catch (const std::exception&) {
    }
    return std::nullopt;
  }
  if (text.rfind("R^", 0) == 0) {
    try {
      int d = std::stoi(text.substr(2));
      if (d >= 1) return real_vector(d);
    } catch (const std::exception&) {
    }
    return std::nullopt;
  }
  return std::nullopt;
}

GroupValue GroupValue::zero(const Group& g) {
  GroupValue v;
  v.group_ = g;
  v.ival_ = 0;
  switch (g.kind) {
    case GroupKind::real:
      v.rval_ = {0.0};
      break;
    case GroupKind::real_vector:
      v.rval_.assign(static_cast<std::size_t>(g.dim), 0.0);
      break;
    default:
      v.rval_.clear();
      break;
  }
  return v;
}

GroupValue GroupValue::real(double x) {
  GroupValue v;
  v.group_ = Group::real();
  v.rval_ = {x};
  return v;
}

GroupValue GroupValue::integer(std::int64_t x) {
  GroupValue v;
  v.group_ = Group::integer();
  v.ival_ = x;
  v.rval_.clear();
  return v;
}

GroupValue GroupValue::integer_mod(std::int64_t x, int m) {
  GroupValue v;
  v.group_ = Group::integer_mod(m);
  v.ival_ = canonical_residue(x, m);
  v.rval_.clear();
  return v;
}

GroupValue GroupValue::real_vector(std::vector<double> vec) {
  GroupValue v;
  v.group_ = Group::real_vector(static_cast<int>(vec.size()));
  v.rval_ = std::move(vec);
  return v;
}

double GroupValue::norm() const {
  switch (group_.kind) {
    case GroupKind::real:
      return std::abs(rval_[0]);
    case GroupKind::integer:
      return static_cast<double>(ival_ < 0 ? -ival_ : ival_);
    case GroupKind::integer_mod: {
      // Quotient norm: distance to the nearest multiple of m.
      std::int64_t r = ival_;
      return static_cast<double>(std::min(r, group_.modulus - r));
    }
    case GroupKind::real_vector: {
      double s = 0.0;
      for (double x : rval_) s += x * x;
      return std::sqrt(s);
    }
  }
  return 0.0;
}

bool GroupValue::is_zero() const {
  switch (group_.kind) {
    case GroupKind::integer:
    case GroupKind::integer_mod:
      return ival_ == 0;
    default:
      return std::all_of(rval_.begin(), rval_.end(), [](double x) { return x == 0.0; });
  }
}

GroupValue GroupValue::operator+(const GroupValue& o) const {
  if (group_ != o.group_) throw std::invalid_argument("group mismatch in coefficient addition");
  GroupValue v = *this;
  switch (group_.kind) {
    case GroupKind::real:
      v.rval_[0] += o.rval_[0];
      break;
    case GroupKind::integer:
      v.ival_ += o.ival_;
      break;
    case GroupKind::integer_mod:
      v.ival_ = canonical_residue(v.ival_ + o.ival_, group_.modulus);
      break;
    case GroupKind::real_vector:
      for (std::size_t i = 0; i < v.rval_.size(); ++i) v.rval_[i] += o.rval_[i];
      break;
  }
  return v;
}

GroupValue GroupValue::operator-() const {
  GroupValue v = *this;
  switch (group_.kind) {
    case GroupKind::real:
      v.rval_[0] = -v.rval_[0];
      break;
    case GroupKind::integer:
      v.ival_ = -v.ival_;
      break;
    case GroupKind::integer_mod:
      v.ival_ = canonical_residue(-v.ival_, group_.modulus);
      break;
    case GroupKind::real_vector:
      for (double& x : v.rval_) x = -x;
      break;
  }
  return v;
}

bool GroupValue::negligible_against(double scale) const {
  if (is_zero()) return true;
  if (group_.exact()) return false;
  return norm() <= kRealTolerance * scale;
}

}  // namespace flatchain
