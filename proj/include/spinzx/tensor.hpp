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

#ifndef SPINZX_TENSOR_HPP
#define SPINZX_TENSOR_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "spinzx/errors.hpp"

namespace spinzx {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense row-major tensor. The last axis varies fastest. For a tensor that
// came out of a diagram, the first `n_inputs` axes are the inputs in order
// and the remaining axes are the outputs in order.
template <typename Scalar>
class BasicTensor {
 public:
  BasicTensor() : data_(1, Scalar(1)) {}
  BasicTensor(std::vector<int> shape, int n_inputs)
      : shape_(std::move(shape)), n_inputs_(n_inputs) {
    if (n_inputs_ < 0 || n_inputs_ > static_cast<int>(shape_.size())) {
      throw ShapeMismatch("input axis count out of range");
    }
    data_.assign(element_count(shape_), Scalar(0));
  }
  BasicTensor(std::vector<int> shape, int n_inputs, std::vector<Scalar> data)
      : shape_(std::move(shape)), n_inputs_(n_inputs), data_(std::move(data)) {
    if (data_.size() != element_count(shape_)) {
      throw ShapeMismatch("tensor data length does not match its shape");
    }
  }

  static std::size_t element_count(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (int d : shape) n *= static_cast<std::size_t>(d);
    return n;
  }

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int n_inputs() const { return n_inputs_; }
  int n_outputs() const { return rank() - n_inputs_; }
  std::size_t size() const { return data_.size(); }
  const std::vector<Scalar>& data() const { return data_; }
  std::vector<Scalar>& data() { return data_; }

  Scalar& operator[](std::size_t flat) { return data_[flat]; }
  const Scalar& operator[](std::size_t flat) const { return data_[flat]; }

  std::size_t flat_index(const std::vector<int>& index) const {
    if (index.size() != shape_.size()) {
      throw ShapeMismatch("index rank does not match tensor rank");
    }
    std::size_t flat = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
      if (index[a] < 0 || index[a] >= shape_[a]) {
        throw ShapeMismatch("index out of range");
      }
      flat = flat * static_cast<std::size_t>(shape_[a]) +
             static_cast<std::size_t>(index[a]);
    }
    return flat;
  }
  Scalar at(const std::vector<int>& index) const {
    return data_[flat_index(index)];
  }

  std::size_t input_size() const {
    return element_count({shape_.begin(), shape_.begin() + n_inputs_});
  }
  std::size_t output_size() const {
    return element_count({shape_.begin() + n_inputs_, shape_.end()});
  }

  // Linear map view: rows index the outputs, columns index the inputs.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix() const {
    const auto rows = static_cast<Eigen::Index>(output_size());
    const auto cols = static_cast<Eigen::Index>(input_size());
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        m(r, c) = data_[static_cast<std::size_t>(c * rows + r)];
      }
    }
    return m;
  }

  static BasicTensor from_matrix(
      const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
      const std::vector<int>& in_dims, const std::vector<int>& out_dims) {
    if (static_cast<std::size_t>(m.cols()) != element_count(in_dims) ||
        static_cast<std::size_t>(m.rows()) != element_count(out_dims)) {
      throw ShapeMismatch("matrix shape does not match the given dims");
    }
    std::vector<int> shape = in_dims;
    shape.insert(shape.end(), out_dims.begin(), out_dims.end());
    BasicTensor t(shape, static_cast<int>(in_dims.size()));
    const auto rows = m.rows();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        t.data_[static_cast<std::size_t>(c * rows + r)] = m(r, c);
      }
    }
    return t;
  }

  // Scalar value of a rank-0 tensor.
  Scalar scalar() const {
    if (!shape_.empty()) throw ShapeMismatch("tensor is not a scalar");
    return data_[0];
  }

  double max_abs() const {
    double best = 0;
    for (const auto& v : data_) best = std::max(best, std::abs(v));
    return best;
  }

 private:
  std::vector<int> shape_;
  int n_inputs_ = 0;
  std::vector<Scalar> data_;
};

using Tensor = BasicTensor<Complex>;

template <typename Scalar>
double max_abs_diff(const BasicTensor<Scalar>& a, const BasicTensor<Scalar>& b) {
  if (a.shape() != b.shape()) {
    throw ShapeMismatch("cannot compare tensors of different shapes");
  }
  double best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, std::abs(a[i] - b[i]));
  }
  return best;
}

template <typename Scalar>
double max_abs_diff(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("cannot compare matrices of different shapes");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

// Reorders axes so that output axis k is input axis perm[k].
template <typename Scalar>
BasicTensor<Scalar> permute_axes(const BasicTensor<Scalar>& t,
                                 const std::vector<int>& perm, int n_inputs) {
  const int r = t.rank();
  if (static_cast<int>(perm.size()) != r) {
    throw ShapeMismatch("axis permutation has the wrong length");
  }
  std::vector<int> shape(r);
  for (int k = 0; k < r; ++k) shape[k] = t.shape()[perm[k]];
  BasicTensor<Scalar> out(shape, n_inputs);
  if (r == 0) {
    out[0] = t[0];
    return out;
  }
  std::vector<std::size_t> src_stride(r);
  std::size_t s = 1;
  for (int a = r - 1; a >= 0; --a) {
    src_stride[a] = s;
    s *= static_cast<std::size_t>(t.shape()[a]);
  }
  std::vector<std::size_t> stride(r);
  for (int k = 0; k < r; ++k) stride[k] = src_stride[perm[k]];
  std::vector<int> idx(r, 0);
  std::size_t src = 0;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out[flat] = t[src];
    for (int k = r - 1; k >= 0; --k) {
      if (++idx[k] < shape[k]) {
        src += stride[k];
        break;
      }
      src -= stride[k] * static_cast<std::size_t>(shape[k] - 1);
      idx[k] = 0;
    }
  }
  return out;
}

// Kronecker product of matrices, left factor most significant.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

}  // namespace spinzx

#endif  // SPINZX_TENSOR_HPP
