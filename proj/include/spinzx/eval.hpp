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

#ifndef SPINZX_EVAL_HPP
#define SPINZX_EVAL_HPP

#include <cstddef>
#include <optional>

#include "spinzx/diagram.hpp"
#include "spinzx/tensor.hpp"

namespace spinzx {

enum class ContractionOrder {
  // Smallest intermediate first, ties to the lowest shared wire index.
  kGreedy,
  // Absorb tensors one at a time in node order. Used to cross-check kGreedy.
  kSequential,
};

struct EvalConfig {
  // Absolute tolerance for comparisons, applied relative to the larger
  // max-abs entry when that exceeds 1.
  double tolerance = 1e-9;
  // Largest tensor, in complex entries, that may appear during contraction.
  std::size_t max_total_entries = std::size_t{1} << 26;
  ContractionOrder order = ContractionOrder::kGreedy;
};

// Dense tensor of a single node with axes in port order.
Tensor node_tensor(const Node& node, const std::vector<int>& leg_dims);

// Contracts the whole diagram. Axes of the result are the inputs followed
// by the outputs. The contraction order is greedy: at every step the pair
// of tensors whose product is smallest is contracted, ties going to the
// lowest shared wire index, so results are reproducible bit for bit.
Tensor evaluate(const Diagram& d, const EvalConfig& config = {});
Tensor evaluate(const DiagramSum& sum, const EvalConfig& config = {});

// Value of a diagram with no boundary. Throws NotClosed otherwise.
Complex evaluate_scalar(const Diagram& d, const EvalConfig& config = {});

// Linear map of the diagram, rows indexed by outputs.
Matrix evaluate_matrix(const Diagram& d, const EvalConfig& config = {});
Matrix evaluate_matrix(const DiagramSum& sum, const EvalConfig& config = {});

bool equal_up_to(const Tensor& a, const Tensor& b, double tolerance);

// Max-abs comparison with the scalar normalization described on EvalConfig.
bool tensors_close(const Tensor& a, const Tensor& b, const EvalConfig& config = {});

// Returns lambda with |a - lambda b|_max <= tolerance |b|_max when one exists.
std::optional<Complex> proportional(const Tensor& a, const Tensor& b,
                                    const EvalConfig& config = {});

}  // namespace spinzx

#endif  // SPINZX_EVAL_HPP
