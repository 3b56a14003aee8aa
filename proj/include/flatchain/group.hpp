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
#include <optional>
#include <string>
#include <vector>

namespace flatchain {

// Relative tolerance used to restore canonical sparsity after inexact
// (floating-point) group operations. Integer groups are always exact.
inline constexpr double kRealTolerance = 1e-9;

enum class GroupKind { real, integer, integer_mod, real_vector };

// Descriptor of a normed Abelian coefficient group: R, Z, Z/m or R^d with
// the Euclidean norm. Every coefficient of a chain carries the same group.
struct Group {
  GroupKind kind = GroupKind::real;
  int modulus = 0;  // integer_mod only, >= 2
  int dim = 0;      // real_vector only, >= 1

  static Group real() { return {GroupKind::real, 0, 0}; }
  static Group integer() { return {GroupKind::integer, 0, 0}; }
  static Group integer_mod(int m);
  static Group real_vector(int d);

  bool exact() const {
    return kind == GroupKind::integer || kind == GroupKind::integer_mod;
  }
  bool real_scalar() const { return kind == GroupKind::real; }

  // "R", "Z", "Z/5", "R^3" -- also the on-disk encoding in chain files.
  std::string name() const;
  static std::optional<Group> parse(const std::string& text);

  bool operator==(const Group&) const = default;
};

// One group element. Immutable value; arithmetic returns fresh values.
class GroupValue {
 public:
  GroupValue() = default;  // zero of R

  static GroupValue zero(const Group& g);
  static GroupValue real(double x);
  static GroupValue integer(std::int64_t x);
  static GroupValue integer_mod(std::int64_t x, int m);
  static GroupValue real_vector(std::vector<double> v);

  const Group& group() const { return group_; }
  double norm() const;
  bool is_zero() const;

  GroupValue operator+(const GroupValue& o) const;
  GroupValue operator-() const;
  GroupValue operator-(const GroupValue& o) const { return *this + (-o); }

  // Payload accessors; valid only for the matching kind.
  std::int64_t int_value() const { return ival_; }
  double real_value() const { return rval_.empty() ? 0.0 : rval_[0]; }
  const std::vector<double>& vector_value() const { return rval_; }

  // True when this value should be treated as zero next to operands of the
  // given norm. Exact groups ignore the scale.
  bool negligible_against(double scale) const;

  bool operator==(const GroupValue&) const = default;

 private:
  Group group_ = Group::real();
  std::int64_t ival_ = 0;
  std::vector<double> rval_ = {0.0};
};

}  // namespace flatchain
