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

#ifndef SPINZX_DIAGRAM_HPP
#define SPINZX_DIAGRAM_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "spinzx/labels.hpp"
#include "spinzx/tensor.hpp"

namespace spinzx {

// Generator kinds. Each node stores only what cannot be recovered from the
// dimensions of the wires attached to it.

// Z spider: sum_j a_j |j..j><j..j| with a_0 = 1 implicit. `params` holds
// a_1..a_{M-1} where M is the smallest leg dimension. A spider with no legs
// uses `dim` as M and denotes the scalar sum_j a_j.
struct ZSpider {
  std::vector<Complex> params;
  int dim = 0;
  bool operator==(const ZSpider&) const = default;
};

// X spider with n inputs and m outputs: maps |i_1..i_n> to the sum of all
// |o_1..o_m> with o_1 + .. + o_m + phase = i_1 + .. + i_n (mod dim).
struct XSpider {
  int dim = 2;
  int phase = 0;
  bool operator==(const XSpider&) const = default;
};

// Qudit Fourier gate (1/sqrt d) sum_jk w^{jk} |j><k|, or its adjoint.
struct Hadamard {
  int dim = 2;
  bool dagger = false;
  bool operator==(const Hadamard&) const = default;
};

// |i> -> |-i mod d>.
struct Dualiser {
  int dim = 2;
  bool operator==(const Dualiser&) const = default;
};

// W node, one input and two outputs: |0> -> |00>, |i> -> |0i> + |i0>.
// The adjoint has two inputs and one output.
struct WNode {
  int dim = 2;
  bool dagger = false;
  bool operator==(const WNode&) const = default;
};

// Triangle: identity plus sum_{i>=1} |i><0|.
struct Triangle {
  int dim = 2;
  bool dagger = false;
  bool operator==(const Triangle&) const = default;
};

// Splits a wire of dim d1*d2 into wires of dim d1 and d2 via
// |i*d2 + k> -> |i>|k>. The adjoint merges.
struct DimSplit {
  int d1 = 2;
  int d2 = 2;
  bool dagger = false;
  bool operator==(const DimSplit&) const = default;
};

// Opaque linear map. Rows index the outputs, columns the inputs, both in
// row-major order over their legs.
struct MatrixBox {
  std::vector<int> in_dims;
  std::vector<int> out_dims;
  Matrix entries;
  bool operator==(const MatrixBox& o) const {
    return in_dims == o.in_dims && out_dims == o.out_dims &&
           entries.rows() == o.entries.rows() &&
           entries.cols() == o.entries.cols() && entries == o.entries;
  }
};

using NodeKind = std::variant<ZSpider, XSpider, Hadamard, Dualiser, WNode,
                              Triangle, DimSplit, MatrixBox>;

std::string kind_name(const NodeKind& kind);

// A node port or a boundary slot. Ports of a node are numbered with the
// inputs first, then the outputs.
struct Endpoint {
  enum class Type { kPort = 0, kInput = 1, kOutput = 2 };
  Type type = Type::kPort;
  int node = -1;
  int index = 0;

  static Endpoint port(int node, int port) { return {Type::kPort, node, port}; }
  static Endpoint input(int pos) { return {Type::kInput, -1, pos}; }
  static Endpoint output(int pos) { return {Type::kOutput, -1, pos}; }
  bool is_port() const { return type == Type::kPort; }
  bool is_boundary() const { return type != Type::kPort; }
  auto operator<=>(const Endpoint&) const = default;
  std::string str() const;
};

struct Wire {
  Endpoint a;
  Endpoint b;
  int dim = 2;
  bool operator==(const Wire&) const = default;
  const Endpoint& other(const Endpoint& e) const { return e == a ? b : a; }
};

struct Node {
  NodeKind kind;
  int n_in = 0;
  int n_out = 0;
  int group = -1;
  int arity() const { return n_in + n_out; }
  bool operator==(const Node&) const = default;
};

// A labelled sub-diagram, such as the nodes that make up a symmetriser.
// The rewrite engine uses it to find composite patterns. `inputs` and
// `outputs` are the node ports that face the outside of the group.
struct Group {
  std::string label;
  int size = 0;
  std::vector<Endpoint> inputs;
  std::vector<Endpoint> outputs;
  bool operator==(const Group&) const = default;
};

// An open graph of generators. Values are immutable once returned by the
// library and are kept in a canonical numbering, so structural equality is
// meaningful. The mutating members exist for constructors and rewrites that
// build a diagram and then call `finish()`.
class Diagram {
 public:
  Diagram() = default;

  const std::map<int, Node>& nodes() const { return nodes_; }
  const std::vector<Wire>& wires() const { return wires_; }
  const std::vector<int>& input_dims() const { return input_dims_; }
  const std::vector<int>& output_dims() const { return output_dims_; }
  const std::map<int, Group>& groups() const { return groups_; }
  Complex scalar() const { return scalar_; }
  int n_inputs() const { return static_cast<int>(input_dims_.size()); }
  int n_outputs() const { return static_cast<int>(output_dims_.size()); }
  const Node& node(int id) const;

  // Builder interface.
  int add_node(NodeKind kind, int n_in, int n_out);
  Endpoint add_input(int dim);
  Endpoint add_output(int dim);
  void connect(const Endpoint& a, const Endpoint& b, int dim);
  void set_scalar(Complex s) { scalar_ = s; }
  void multiply_scalar(Complex s) { scalar_ *= s; }
  Node& mutable_node(int id);
  std::vector<Wire>& mutable_wires() { return wires_; }
  std::map<int, Node>& mutable_nodes() { return nodes_; }
  std::map<int, Group>& mutable_groups() { return groups_; }
  std::vector<int>& mutable_input_dims() { return input_dims_; }
  std::vector<int>& mutable_output_dims() { return output_dims_; }
  int add_group(Group g);
  void dissolve_group(int group_id);

  // Validates and renumbers. Every diagram handed to a caller passes
  // through here.
  void finish();
  void validate() const;

  // Index of the wire attached to an endpoint, or -1.
  int wire_at(const Endpoint& e) const;
  // Wire index for every node port, in port order.
  std::vector<int> node_wires(int id) const;
  // Dimension of each leg of a node, in port order.
  std::vector<int> leg_dims(int id) const;

  std::uint64_t fingerprint() const;

  bool operator==(const Diagram&) const = default;

 private:
  void canonicalize();

  std::map<int, Node> nodes_;
  std::vector<Wire> wires_;
  std::vector<int> input_dims_;
  std::vector<int> output_dims_;
  std::map<int, Group> groups_;
  Complex scalar_ = 1.0;
};

// Port helpers for the builder interface.
inline Endpoint in_port(int node, int i) { return Endpoint::port(node, i); }
Endpoint out_port(const Diagram& d, int node, int i);

// Generators, each as a one-node diagram with every leg on the boundary.
Diagram make_generator(const NodeKind& kind, int n_in, int n_out,
                       const std::vector<int>& leg_dims);
Diagram z_spider(int n_in, int n_out, Dim dim,
                 std::vector<Complex> params = {});
Diagram z_spider_mixed(const std::vector<int>& in_dims,
                       const std::vector<int>& out_dims,
                       std::vector<Complex> params = {});
// Z spider with every a_k = 1.
Diagram z_copy(const std::vector<int>& in_dims,
               const std::vector<int>& out_dims);
Diagram x_spider(int n_in, int n_out, Dim dim, int phase = 0);
Diagram hadamard(Dim dim, bool dagger = false);
Diagram dualiser(Dim dim);
Diagram w_node(Dim dim, bool dagger = false);
Diagram triangle(Dim dim, bool dagger = false);
Diagram dim_split(Dim d1, Dim d2);
Diagram dim_merge(Dim d1, Dim d2);
Diagram matrix_box(const Matrix& m, const std::vector<int>& in_dims,
                   const std::vector<int>& out_dims);

// Wire-only diagrams.
Diagram empty_diagram();
Diagram scalar_diagram(Complex s);
Diagram identity(Dim dim);
Diagram identity_wires(const std::vector<int>& dims);
Diagram swap(Dim d1, Dim d2);
Diagram cup(Dim dim);
Diagram cap(Dim dim);
// Output k carries input perm[k].
Diagram permutation(const std::vector<int>& dims, const std::vector<int>& perm);

// Combinators. `compose(first, second)` feeds the outputs of `first` into
// the inputs of `second`, so as a linear map it is second * first.
Diagram compose(const Diagram& first, const Diagram& second);
Diagram compose(const std::vector<Diagram>& sequence);
Diagram tensor(const Diagram& left, const Diagram& right);
Diagram tensor(const std::vector<Diagram>& factors);
Diagram tensor_power(const Diagram& d, int n);
Diagram adjoint(const Diagram& d);
Diagram scaled(const Diagram& d, Complex s);

// x -> m*x mod d as a Z copy into an X sum.
Diagram multiplier(int m, Dim dim);

// Formal linear combination of diagrams with matching boundaries.
struct DiagramSum {
  std::vector<std::pair<Complex, Diagram>> terms;
  void add(Complex c, Diagram d) { terms.emplace_back(c, std::move(d)); }
};

}  // namespace spinzx

#endif  // SPINZX_DIAGRAM_HPP
