// Copyright 2026 The spinzx Authors
//
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

#ifndef SPINZX_LABELS_HPP
#define SPINZX_LABELS_HPP

#include <compare>
#include <string>

#include "spinzx/errors.hpp"

namespace spinzx {

// Dimension of a wire. Always at least 2.
class Dim {
 public:
  Dim(int value) : value_(value) {  // NOLINT(google-explicit-constructor)
    if (value < 2) {
      throw DimMismatch("wire dimension must be at least 2, got " +
                        std::to_string(value));
    }
  }
  int value() const { return value_; }
  operator int() const { return value_; }  // NOLINT(google-explicit-constructor)

 private:
  int value_;
};

// Spin j stored as the integer 2j.
class SpinLabel {
 public:
  explicit constexpr SpinLabel(int twice_j) : twice_(twice_j) {}
  static SpinLabel from_twice(int twice_j) {
    if (twice_j < 0) throw InvalidMagnetic("spin must be non-negative");
    return SpinLabel(twice_j);
  }
  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  constexpr int dim() const { return twice_ + 1; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  auto operator<=>(const SpinLabel&) const = default;
  std::string str() const {
    return twice_ % 2 == 0 ? std::to_string(twice_ / 2)
                           : std::to_string(twice_) + "/2";
  }

 private:
  int twice_;
};

// Magnetic number m stored as 2m. Validity against a spin is checked by
// `basis_index`.
class MagneticLabel {
 public:
  explicit constexpr MagneticLabel(int twice_m) : twice_(twice_m) {}
  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  auto operator<=>(const MagneticLabel&) const = default;
  std::string str() const {
    return twice_ % 2 == 0 ? std::to_string(twice_ / 2)
                           : std::to_string(twice_) + "/2";
  }

 private:
  int twice_;
};

// Position of |j, m> in the magnetic basis: index k = j - m, so index 0 is
// m = +j and index 2j is m = -j.
inline int basis_index(SpinLabel j, MagneticLabel m) {
  const int diff = j.twice() - m.twice();
  if (m.twice() > j.twice() || m.twice() < -j.twice() || diff % 2 != 0) {
    throw InvalidMagnetic("m = " + m.str() + " is not valid for j = " +
                          j.str());
  }
  return diff / 2;
}

inline MagneticLabel magnetic_at(SpinLabel j, int index) {
  if (index < 0 || index > j.twice()) {
    throw InvalidMagnetic("basis index out of range for j = " + j.str());
  }
  return MagneticLabel(j.twice() - 2 * index);
}

}  // namespace spinzx

#endif  // SPINZX_LABELS_HPP
