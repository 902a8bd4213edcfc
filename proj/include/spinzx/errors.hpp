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

#ifndef SPINZX_ERRORS_HPP
#define SPINZX_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinzx {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural errors raised while building or validating a diagram. All of
// them are validation errors so callers can catch the family at once.
class ValidationError : public Error {
 public:
  using Error::Error;
};
class ArityMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DimMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class ParamLengthMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class BoundaryMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class UnsupportedKind : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Raised by the .zxd reader; carries a 1-based line/column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Evaluation errors.
class SizeExceeded : public Error {
 public:
  using Error::Error;
};
class NumericOverflow : public Error {
 public:
  using Error::Error;
};
class NotClosed : public Error {
 public:
  using Error::Error;
};
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Argument errors for the SU(2) layer.
class InadmissibleTriple : public Error {
 public:
  using Error::Error;
};
class InvalidMagnetic : public Error {
 public:
  using Error::Error;
};
class InvalidPermutation : public Error {
 public:
  using Error::Error;
};
class NotSU2 : public Error {
 public:
  using Error::Error;
};
class InadmissibleTree : public Error {
 public:
  using Error::Error;
};
class LeafCountMismatch : public Error {
 public:
  using Error::Error;
};
class EmptyHamiltonian : public Error {
 public:
  using Error::Error;
};

// Rewrite engine errors.
class SoundnessFailure : public Error {
 public:
  using Entries = std::vector<std::complex<double>>;
  SoundnessFailure(const std::string& rule, const std::string& binding,
                   double max_diff, Entries lhs = {}, Entries rhs = {})
      : Error("rule '" + rule + "' is unsound at binding " + binding +
              " (max |lhs - rhs| = " + std::to_string(max_diff) + ")"),
        rule_(rule),
        binding_(binding),
        max_diff_(max_diff),
        lhs_(std::move(lhs)),
        rhs_(std::move(rhs)) {}
  const std::string& rule() const { return rule_; }
  const std::string& binding() const { return binding_; }
  double max_diff() const { return max_diff_; }
  // Flattened tensors of both sides at the failing binding.
  const Entries& lhs_tensor() const { return lhs_; }
  const Entries& rhs_tensor() const { return rhs_; }

 private:
  std::string rule_;
  std::string binding_;
  double max_diff_;
  Entries lhs_;
  Entries rhs_;
};
class StaleSite : public Error {
 public:
  using Error::Error;
};

}  // namespace spinzx

#endif  // SPINZX_ERRORS_HPP
