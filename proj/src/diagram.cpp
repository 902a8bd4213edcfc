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

#include "spinzx/diagram.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace spinzx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int mod(int a, int d) { return ((a % d) + d) % d; }

std::string dims_str(const std::vector<int>& dims) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    os << (i ? "," : "") << dims[i];
  }
  os << ")";
  return os.str();
}

std::size_t product(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

}  // namespace

std::string kind_name(const NodeKind& kind) {
  return std::visit(overloaded{
                        [](const ZSpider&) { return std::string("z"); },
                        [](const XSpider&) { return std::string("x"); },
                        [](const Hadamard&) { return std::string("h"); },
                        [](const Dualiser&) { return std::string("du"); },
                        [](const WNode&) { return std::string("w"); },
                        [](const Triangle&) { return std::string("triangle"); },
                        [](const DimSplit&) { return std::string("split"); },
                        [](const MatrixBox&) { return std::string("matrix"); },
                    },
                    kind);
}

std::string Endpoint::str() const {
  switch (type) {
    case Type::kPort:
      return "node " + std::to_string(node) + " port " + std::to_string(index);
    case Type::kInput:
      return "input " + std::to_string(index);
    case Type::kOutput:
      return "output " + std::to_string(index);
  }
  return "?";
}

const Node& Diagram::node(int id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw ValidationError("no node with id " + std::to_string(id));
  }
  return it->second;
}

Node& Diagram::mutable_node(int id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw ValidationError("no node with id " + std::to_string(id));
  }
  return it->second;
}

int Diagram::add_node(NodeKind kind, int n_in, int n_out) {
  if (n_in < 0 || n_out < 0) throw ArityMismatch("negative arity");
  const int id = nodes_.empty() ? 0 : nodes_.rbegin()->first + 1;
  nodes_.emplace(id, Node{std::move(kind), n_in, n_out, -1});
  return id;
}

Endpoint Diagram::add_input(int dim) {
  Dim checked(dim);
  input_dims_.push_back(checked);
  return Endpoint::input(n_inputs() - 1);
}

Endpoint Diagram::add_output(int dim) {
  Dim checked(dim);
  output_dims_.push_back(checked);
  return Endpoint::output(n_outputs() - 1);
}

void Diagram::connect(const Endpoint& a, const Endpoint& b, int dim) {
  Dim checked(dim);
  wires_.push_back(Wire{a, b, checked});
}

int Diagram::add_group(Group g) {
  const int id = groups_.empty() ? 0 : groups_.rbegin()->first + 1;
  for (const auto& e : g.inputs) mutable_node(e.node).group = id;
  for (const auto& e : g.outputs) mutable_node(e.node).group = id;
  groups_.emplace(id, std::move(g));
  return id;
}

void Diagram::dissolve_group(int group_id) {
  if (groups_.erase(group_id) == 0) return;
  for (auto& [id, n] : nodes_) {
    if (n.group == group_id) n.group = -1;
  }
}

Endpoint out_port(const Diagram& d, int node, int i) {
  return Endpoint::port(node, d.node(node).n_in + i);
}

int Diagram::wire_at(const Endpoint& e) const {
  for (std::size_t w = 0; w < wires_.size(); ++w) {
    if (wires_[w].a == e || wires_[w].b == e) return static_cast<int>(w);
  }
  return -1;
}

std::vector<int> Diagram::node_wires(int id) const {
  const Node& n = node(id);
  std::vector<int> out(static_cast<std::size_t>(n.arity()), -1);
  for (std::size_t w = 0; w < wires_.size(); ++w) {
    for (const Endpoint* e : {&wires_[w].a, &wires_[w].b}) {
      if (e->is_port() && e->node == id && e->index >= 0 &&
          e->index < n.arity()) {
        out[static_cast<std::size_t>(e->index)] = static_cast<int>(w);
      }
    }
  }
  return out;
}

std::vector<int> Diagram::leg_dims(int id) const {
  std::vector<int> ws = node_wires(id);
  std::vector<int> dims;
  dims.reserve(ws.size());
  for (int w : ws) dims.push_back(w < 0 ? 0 : wires_[static_cast<std::size_t>(w)].dim);
  return dims;
}

namespace {

void validate_node(int id, const Node& n, const std::vector<int>& legs) {
  const std::string where = "node " + std::to_string(id) + " (" +
                            kind_name(n.kind) + ")";
  auto require_arity = [&](int in, int out) {
    if (n.n_in != in || n.n_out != out) {
      throw ArityMismatch(where + " must have " + std::to_string(in) +
                          " inputs and " + std::to_string(out) + " outputs");
    }
  };
  auto require_all = [&](int d) {
    for (int l : legs) {
      if (l != d) {
        throw DimMismatch(where + " expects every leg to have dim " +
                          std::to_string(d) + ", legs are " + dims_str(legs));
      }
    }
  };
  std::visit(
      overloaded{
          [&](const ZSpider& z) {
            int m = 0;
            if (legs.empty()) {
              if (z.dim < 2) {
                throw DimMismatch(where + " has no legs and needs dim >= 2");
              }
              m = z.dim;
            } else {
              m = *std::min_element(legs.begin(), legs.end());
            }
            if (static_cast<int>(z.params.size()) != m - 1) {
              throw ParamLengthMismatch(
                  where + " needs " + std::to_string(m - 1) +
                  " parameters for minimum leg dim " + std::to_string(m) +
                  ", got " + std::to_string(z.params.size()));
            }
          },
          [&](const XSpider& x) {
            if (x.dim < 2) throw DimMismatch(where + " has dim < 2");
            if (x.phase < 0 || x.phase >= x.dim) {
              throw ParamLengthMismatch(where + " phase must lie in [0, dim)");
            }
            require_all(x.dim);
          },
          [&](const Hadamard& h) {
            require_arity(1, 1);
            require_all(h.dim);
          },
          [&](const Dualiser& u) {
            require_arity(1, 1);
            require_all(u.dim);
          },
          [&](const WNode& w) {
            if (w.dagger) {
              require_arity(2, 1);
            } else {
              require_arity(1, 2);
            }
            require_all(w.dim);
          },
          [&](const Triangle& t) {
            require_arity(1, 1);
            require_all(t.dim);
          },
          [&](const DimSplit& s) {
            const std::vector<int> expect =
                s.dagger ? std::vector<int>{s.d1, s.d2, s.d1 * s.d2}
                         : std::vector<int>{s.d1 * s.d2, s.d1, s.d2};
            if (s.dagger) {
              require_arity(2, 1);
            } else {
              require_arity(1, 2);
            }
            if (legs != expect) {
              throw DimMismatch(where + " expects legs " + dims_str(expect) +
                                ", got " + dims_str(legs));
            }
          },
          [&](const MatrixBox& m) {
            require_arity(static_cast<int>(m.in_dims.size()),
                          static_cast<int>(m.out_dims.size()));
            std::vector<int> expect = m.in_dims;
            expect.insert(expect.end(), m.out_dims.begin(), m.out_dims.end());
            if (legs != expect) {
              throw DimMismatch(where + " expects legs " + dims_str(expect) +
                                ", got " + dims_str(legs));
            }
            if (static_cast<std::size_t>(m.entries.rows()) !=
                    product(m.out_dims) ||
                static_cast<std::size_t>(m.entries.cols()) !=
                    product(m.in_dims)) {
              throw DimMismatch(where + " matrix shape does not match its dims");
            }
          },
      },
      n.kind);
}

}  // namespace

void Diagram::validate() const {
  std::map<Endpoint, int> seen;
  std::vector<int> in_used(input_dims_.size(), 0);
  std::vector<int> out_used(output_dims_.size(), 0);
  std::map<int, std::vector<int>> legs;
  for (const auto& [id, n] : nodes_) {
    legs[id] = std::vector<int>(static_cast<std::size_t>(n.arity()), 0);
  }
  for (std::size_t w = 0; w < wires_.size(); ++w) {
    const Wire& wire = wires_[w];
    if (wire.dim < 2) {
      throw DimMismatch("wire " + std::to_string(w) + " has dim < 2");
    }
    for (const Endpoint* e : {&wire.a, &wire.b}) {
      if (seen.count(*e)) {
        throw ValidationError(e->str() + " is used by more than one wire");
      }
      seen[*e] = static_cast<int>(w);
      switch (e->type) {
        case Endpoint::Type::kPort: {
          auto it = nodes_.find(e->node);
          if (it == nodes_.end()) {
            throw ValidationError("wire " + std::to_string(w) +
                                  " refers to missing node " +
                                  std::to_string(e->node));
          }
          if (e->index < 0 || e->index >= it->second.arity()) {
            throw ArityMismatch("wire " + std::to_string(w) + " uses " +
                                e->str() + " which does not exist");
          }
          legs[e->node][static_cast<std::size_t>(e->index)] = wire.dim;
          break;
        }
        case Endpoint::Type::kInput:
          if (e->index < 0 || e->index >= n_inputs()) {
            throw BoundaryMismatch("wire uses " + e->str() +
                                   " which does not exist");
          }
          if (input_dims_[static_cast<std::size_t>(e->index)] != wire.dim) {
            throw DimMismatch(e->str() + " has dim " +
                              std::to_string(input_dims_[e->index]) +
                              " but its wire has dim " +
                              std::to_string(wire.dim));
          }
          in_used[static_cast<std::size_t>(e->index)]++;
          break;
        case Endpoint::Type::kOutput:
          if (e->index < 0 || e->index >= n_outputs()) {
            throw BoundaryMismatch("wire uses " + e->str() +
                                   " which does not exist");
          }
          if (output_dims_[static_cast<std::size_t>(e->index)] != wire.dim) {
            throw DimMismatch(e->str() + " has dim " +
                              std::to_string(output_dims_[e->index]) +
                              " but its wire has dim " +
                              std::to_string(wire.dim));
          }
          out_used[static_cast<std::size_t>(e->index)]++;
          break;
      }
    }
  }
  for (std::size_t i = 0; i < in_used.size(); ++i) {
    if (in_used[i] != 1) {
      throw BoundaryMismatch("input " + std::to_string(i) +
                             " is not attached to exactly one wire");
    }
  }
  for (std::size_t i = 0; i < out_used.size(); ++i) {
    if (out_used[i] != 1) {
      throw BoundaryMismatch("output " + std::to_string(i) +
                             " is not attached to exactly one wire");
    }
  }
  for (const auto& [id, n] : nodes_) {
    const auto& l = legs[id];
    for (std::size_t p = 0; p < l.size(); ++p) {
      if (l[p] == 0) {
        throw ValidationError("node " + std::to_string(id) + " port " +
                              std::to_string(p) + " is dangling");
      }
    }
    validate_node(id, n, l);
    if (n.group >= 0 && !groups_.count(n.group)) {
      throw ValidationError("node " + std::to_string(id) +
                            " refers to a missing group");
    }
  }
  for (const auto& [gid, g] : groups_) {
    for (const auto* list : {&g.inputs, &g.outputs}) {
      for (const auto& e : *list) {
        auto it = nodes_.find(e.node);
        if (it == nodes_.end() || it->second.group != gid) {
          throw ValidationError("group " + std::to_string(gid) +
                                " refers to a node outside the group");
        }
      }
    }
  }
}

void Diagram::canonicalize() {
  std::map<int, int> remap;
  std::map<int, Node> nodes;
  int next = 0;
  for (auto& [id, n] : nodes_) {
    remap[id] = next;
    nodes.emplace(next, std::move(n));
    ++next;
  }
  nodes_ = std::move(nodes);
  auto fix = [&](Endpoint& e) {
    if (e.is_port()) e.node = remap.at(e.node);
  };
  for (auto& w : wires_) {
    fix(w.a);
    fix(w.b);
    if (w.b < w.a) std::swap(w.a, w.b);
  }
  std::sort(wires_.begin(), wires_.end(), [](const Wire& x, const Wire& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  std::map<int, int> group_remap;
  std::map<int, Group> groups;
  int next_group = 0;
  for (auto& [gid, g] : groups_) {
    for (auto& e : g.inputs) fix(e);
    for (auto& e : g.outputs) fix(e);
    group_remap[gid] = next_group;
    groups.emplace(next_group, std::move(g));
    ++next_group;
  }
  groups_ = std::move(groups);
  for (auto& [id, n] : nodes_) {
    if (n.group >= 0) {
      auto it = group_remap.find(n.group);
      n.group = it == group_remap.end() ? -1 : it->second;
    }
  }
}

void Diagram::finish() {
  canonicalize();
  validate();
}

std::uint64_t Diagram::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  auto mixd = [&](double v) { mix(std::hash<double>{}(v)); };
  for (const auto& [id, n] : nodes_) {
    mix(static_cast<std::uint64_t>(id));
    mix(n.kind.index());
    mix(static_cast<std::uint64_t>(n.n_in) * 131 + n.n_out);
    mix(static_cast<std::uint64_t>(n.group + 1));
    std::visit(overloaded{
                   [&](const ZSpider& z) {
                     mix(z.dim);
                     for (auto c : z.params) {
                       mixd(c.real());
                       mixd(c.imag());
                     }
                   },
                   [&](const XSpider& x) { mix(x.dim * 1000 + x.phase); },
                   [&](const Hadamard& x) { mix(x.dim * 2 + x.dagger); },
                   [&](const Dualiser& x) { mix(x.dim); },
                   [&](const WNode& x) { mix(x.dim * 2 + x.dagger); },
                   [&](const Triangle& x) { mix(x.dim * 2 + x.dagger); },
                   [&](const DimSplit& x) {
                     mix(x.d1 * 1000 + x.d2 * 2 + x.dagger);
                   },
                   [&](const MatrixBox& m) {
                     for (Eigen::Index i = 0; i < m.entries.size(); ++i) {
                       mixd(m.entries.data()[i].real());
                       mixd(m.entries.data()[i].imag());
                     }
                   },
               },
               n.kind);
  }
  for (const auto& w : wires_) {
    for (const auto& e : {w.a, w.b}) {
      mix(static_cast<std::uint64_t>(e.type) * 7 + e.node * 1009 + e.index);
    }
    mix(w.dim);
  }
  for (int d : input_dims_) mix(d);
  mix(0xabcdef);
  for (int d : output_dims_) mix(d);
  mixd(scalar_.real());
  mixd(scalar_.imag());
  return h;
}

// Generators.

Diagram make_generator(const NodeKind& kind, int n_in, int n_out,
                       const std::vector<int>& leg_dims) {
  if (static_cast<int>(leg_dims.size()) != n_in + n_out) {
    throw ArityMismatch("make_generator: " + std::to_string(leg_dims.size()) +
                        " leg dims for arity " + std::to_string(n_in) + "+" +
                        std::to_string(n_out));
  }
  Diagram d;
  const int id = d.add_node(kind, n_in, n_out);
  for (int i = 0; i < n_in; ++i) {
    d.connect(d.add_input(leg_dims[i]), Endpoint::port(id, i), leg_dims[i]);
  }
  for (int o = 0; o < n_out; ++o) {
    const int dim = leg_dims[static_cast<std::size_t>(n_in + o)];
    d.connect(Endpoint::port(id, n_in + o), d.add_output(dim), dim);
  }
  d.finish();
  return d;
}

Diagram z_spider(int n_in, int n_out, Dim dim, std::vector<Complex> params) {
  if (params.empty() && dim > 1) {
    params.assign(static_cast<std::size_t>(dim - 1), Complex(1.0));
  }
  std::vector<int> legs(static_cast<std::size_t>(n_in + n_out), dim);
  ZSpider z{std::move(params), n_in + n_out == 0 ? int(dim) : 0};
  return make_generator(z, n_in, n_out, legs);
}

Diagram z_spider_mixed(const std::vector<int>& in_dims,
                       const std::vector<int>& out_dims,
                       std::vector<Complex> params) {
  std::vector<int> legs = in_dims;
  legs.insert(legs.end(), out_dims.begin(), out_dims.end());
  if (legs.empty()) throw ArityMismatch("z_spider_mixed needs at least one leg");
  return make_generator(ZSpider{std::move(params), 0},
                        static_cast<int>(in_dims.size()),
                        static_cast<int>(out_dims.size()), legs);
}

Diagram z_copy(const std::vector<int>& in_dims,
               const std::vector<int>& out_dims) {
  std::vector<int> legs = in_dims;
  legs.insert(legs.end(), out_dims.begin(), out_dims.end());
  if (legs.empty()) throw ArityMismatch("z_copy needs at least one leg");
  const int m = *std::min_element(legs.begin(), legs.end());
  return z_spider_mixed(in_dims, out_dims,
                        std::vector<Complex>(static_cast<std::size_t>(m - 1),
                                             Complex(1.0)));
}

Diagram x_spider(int n_in, int n_out, Dim dim, int phase) {
  std::vector<int> legs(static_cast<std::size_t>(n_in + n_out), dim);
  return make_generator(XSpider{dim, mod(phase, dim)}, n_in, n_out, legs);
}

Diagram hadamard(Dim dim, bool dagger) {
  return make_generator(Hadamard{dim, dagger}, 1, 1, {dim, dim});
}

Diagram dualiser(Dim dim) {
  return make_generator(Dualiser{dim}, 1, 1, {dim, dim});
}

Diagram w_node(Dim dim, bool dagger) {
  return dagger ? make_generator(WNode{dim, true}, 2, 1, {dim, dim, dim})
                : make_generator(WNode{dim, false}, 1, 2, {dim, dim, dim});
}

Diagram triangle(Dim dim, bool dagger) {
  return make_generator(Triangle{dim, dagger}, 1, 1, {dim, dim});
}

Diagram dim_split(Dim d1, Dim d2) {
  return make_generator(DimSplit{d1, d2, false}, 1, 2, {d1 * d2, d1, d2});
}

Diagram dim_merge(Dim d1, Dim d2) {
  return make_generator(DimSplit{d1, d2, true}, 2, 1, {d1, d2, d1 * d2});
}

Diagram matrix_box(const Matrix& m, const std::vector<int>& in_dims,
                   const std::vector<int>& out_dims) {
  std::vector<int> legs = in_dims;
  legs.insert(legs.end(), out_dims.begin(), out_dims.end());
  return make_generator(MatrixBox{in_dims, out_dims, m},
                        static_cast<int>(in_dims.size()),
                        static_cast<int>(out_dims.size()), legs);
}

Diagram empty_diagram() { return Diagram(); }

Diagram scalar_diagram(Complex s) {
  Diagram d;
  d.set_scalar(s);
  return d;
}

Diagram identity(Dim dim) { return identity_wires({dim}); }

Diagram identity_wires(const std::vector<int>& dims) {
  std::vector<int> perm(dims.size());
  std::iota(perm.begin(), perm.end(), 0);
  return permutation(dims, perm);
}

Diagram permutation(const std::vector<int>& dims,
                    const std::vector<int>& perm) {
  if (perm.size() != dims.size()) {
    throw InvalidPermutation("permutation length does not match wire count");
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) {
      throw InvalidPermutation("not a permutation of 0..n-1");
    }
  }
  Diagram d;
  for (int dim : dims) d.add_input(dim);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    const int dim = dims[static_cast<std::size_t>(perm[k])];
    d.connect(Endpoint::input(perm[k]), d.add_output(dim), dim);
  }
  d.finish();
  return d;
}

Diagram swap(Dim d1, Dim d2) { return permutation({d1, d2}, {1, 0}); }

Diagram cup(Dim dim) {
  Diagram d;
  Endpoint a = d.add_output(dim);
  Endpoint b = d.add_output(dim);
  d.connect(a, b, dim);
  d.finish();
  return d;
}

Diagram cap(Dim dim) {
  Diagram d;
  Endpoint a = d.add_input(dim);
  Endpoint b = d.add_input(dim);
  d.connect(a, b, dim);
  d.finish();
  return d;
}

// Combinators.

Diagram compose(const Diagram& first, const Diagram& second) {
  if (first.output_dims() != second.input_dims()) {
    throw BoundaryMismatch("compose: outputs " + dims_str(first.output_dims()) +
                           " do not match inputs " +
                           dims_str(second.input_dims()));
  }
  Diagram out;
  const int offset =
      first.nodes().empty() ? 0 : first.nodes().rbegin()->first + 1;
  for (const auto& [id, n] : first.nodes()) {
    out.mutable_nodes().emplace(id, n);
  }
  const int group_offset =
      first.groups().empty() ? 0 : first.groups().rbegin()->first + 1;
  for (const auto& [gid, g] : first.groups()) {
    out.mutable_groups().emplace(gid, g);
  }
  for (const auto& [id, n] : second.nodes()) {
    Node copy = n;
    if (copy.group >= 0) copy.group += group_offset;
    out.mutable_nodes().emplace(id + offset, copy);
  }
  for (const auto& [gid, g] : second.groups()) {
    Group copy = g;
    for (auto& e : copy.inputs) e.node += offset;
    for (auto& e : copy.outputs) e.node += offset;
    out.mutable_groups().emplace(gid + group_offset, copy);
  }
  out.mutable_input_dims() = first.input_dims();
  out.mutable_output_dims() = second.output_dims();
  out.set_scalar(first.scalar() * second.scalar());

  // Segment ends are either terminals (ports or outer boundary slots) or
  // junctions, which are the shared middle boundary slots.
  struct End {
    bool junction;
    int junction_id;
    Endpoint terminal;
  };
  struct Segment {
    End ends[2];
    int dim;
  };
  std::vector<Segment> segs;
  const int n_mid = first.n_outputs();
  std::vector<std::vector<std::pair<int, int>>> at_junction(
      static_cast<std::size_t>(n_mid));
  auto end_from_first = [&](const Endpoint& e) -> End {
    if (e.type == Endpoint::Type::kOutput) return {true, e.index, {}};
    return {false, -1, e};
  };
  auto end_from_second = [&](const Endpoint& e) -> End {
    if (e.type == Endpoint::Type::kInput) return {true, e.index, {}};
    Endpoint t = e;
    if (t.is_port()) t.node += offset;
    return {false, -1, t};
  };
  for (const auto& w : first.wires()) {
    segs.push_back({{end_from_first(w.a), end_from_first(w.b)}, w.dim});
  }
  for (const auto& w : second.wires()) {
    segs.push_back({{end_from_second(w.a), end_from_second(w.b)}, w.dim});
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (int side = 0; side < 2; ++side) {
      if (segs[s].ends[side].junction) {
        at_junction[static_cast<std::size_t>(segs[s].ends[side].junction_id)]
            .emplace_back(static_cast<int>(s), side);
      }
    }
  }
  std::vector<bool> used(segs.size(), false);
  auto walk = [&](int s, int from_side) -> Endpoint {
    // Leave segment s through the end opposite `from_side` until a
    // terminal is reached.
    while (true) {
      used[static_cast<std::size_t>(s)] = true;
      const End& e = segs[static_cast<std::size_t>(s)].ends[1 - from_side];
      if (!e.junction) return e.terminal;
      const auto& pair = at_junction[static_cast<std::size_t>(e.junction_id)];
      std::pair<int, int> next = pair[0];
      if (next == std::make_pair(s, 1 - from_side)) next = pair[1];
      s = next.first;
      from_side = next.second;
    }
  };
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    for (int side = 0; side < 2; ++side) {
      if (!segs[s].ends[side].junction) {
        Endpoint start = segs[s].ends[side].terminal;
        Endpoint stop = walk(static_cast<int>(s), side);
        out.connect(start, stop, segs[s].dim);
        break;
      }
    }
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    // Closed loop made only of junctions.
    out.multiply_scalar(static_cast<double>(segs[s].dim));
    const End& e0 = segs[s].ends[0];
    int cur = static_cast<int>(s);
    int side = 0;
    (void)e0;
    while (!used[static_cast<std::size_t>(cur)]) {
      used[static_cast<std::size_t>(cur)] = true;
      const End& e = segs[static_cast<std::size_t>(cur)].ends[1 - side];
      const auto& pair = at_junction[static_cast<std::size_t>(e.junction_id)];
      std::pair<int, int> next = pair[0];
      if (next == std::make_pair(cur, 1 - side)) next = pair[1];
      cur = next.first;
      side = next.second;
    }
  }
  out.finish();
  return out;
}

Diagram compose(const std::vector<Diagram>& sequence) {
  if (sequence.empty()) return empty_diagram();
  Diagram acc = sequence.front();
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    acc = compose(acc, sequence[i]);
  }
  return acc;
}

Diagram tensor(const Diagram& left, const Diagram& right) {
  Diagram out = left;
  const int offset =
      left.nodes().empty() ? 0 : left.nodes().rbegin()->first + 1;
  const int group_offset =
      left.groups().empty() ? 0 : left.groups().rbegin()->first + 1;
  const int in_off = left.n_inputs();
  const int out_off = left.n_outputs();
  for (const auto& [id, n] : right.nodes()) {
    Node copy = n;
    if (copy.group >= 0) copy.group += group_offset;
    out.mutable_nodes().emplace(id + offset, copy);
  }
  for (const auto& [gid, g] : right.groups()) {
    Group copy = g;
    for (auto& e : copy.inputs) e.node += offset;
    for (auto& e : copy.outputs) e.node += offset;
    out.mutable_groups().emplace(gid + group_offset, copy);
  }
  auto shift = [&](Endpoint e) {
    switch (e.type) {
      case Endpoint::Type::kPort:
        e.node += offset;
        break;
      case Endpoint::Type::kInput:
        e.index += in_off;
        break;
      case Endpoint::Type::kOutput:
        e.index += out_off;
        break;
    }
    return e;
  };
  for (const auto& w : right.wires()) {
    out.connect(shift(w.a), shift(w.b), w.dim);
  }
  for (int dim : right.input_dims()) out.mutable_input_dims().push_back(dim);
  for (int dim : right.output_dims()) out.mutable_output_dims().push_back(dim);
  out.set_scalar(left.scalar() * right.scalar());
  out.finish();
  return out;
}

Diagram tensor(const std::vector<Diagram>& factors) {
  Diagram acc;
  for (const auto& f : factors) acc = tensor(acc, f);
  return acc;
}

Diagram tensor_power(const Diagram& d, int n) {
  Diagram acc;
  for (int i = 0; i < n; ++i) acc = tensor(acc, d);
  return acc;
}

Diagram adjoint(const Diagram& d) {
  Diagram out;
  for (const auto& [id, n] : d.nodes()) {
    Node copy = n;
    std::swap(copy.n_in, copy.n_out);
    std::visit(overloaded{
                   [](ZSpider& z) {
                     for (auto& c : z.params) c = std::conj(c);
                   },
                   [](XSpider& x) { x.phase = mod(-x.phase, x.dim); },
                   [](Hadamard& h) { h.dagger = !h.dagger; },
                   [](Dualiser&) {},
                   [](WNode& w) { w.dagger = !w.dagger; },
                   [](Triangle& t) { t.dagger = !t.dagger; },
                   [](DimSplit& s) { s.dagger = !s.dagger; },
                   [](MatrixBox& m) {
                     std::swap(m.in_dims, m.out_dims);
                     m.entries = m.entries.adjoint().eval();
                   },
               },
               copy.kind);
    out.mutable_nodes().emplace(id, copy);
  }
  auto flip = [&](Endpoint e) {
    switch (e.type) {
      case Endpoint::Type::kPort: {
        const Node& n = d.node(e.node);
        e.index = e.index < n.n_in ? n.n_out + e.index : e.index - n.n_in;
        break;
      }
      case Endpoint::Type::kInput:
        e.type = Endpoint::Type::kOutput;
        break;
      case Endpoint::Type::kOutput:
        e.type = Endpoint::Type::kInput;
        break;
    }
    return e;
  };
  for (const auto& w : d.wires()) out.connect(flip(w.a), flip(w.b), w.dim);
  for (const auto& [gid, g] : d.groups()) {
    Group copy = g;
    copy.inputs.clear();
    copy.outputs.clear();
    for (const auto& e : g.outputs) copy.inputs.push_back(flip(e));
    for (const auto& e : g.inputs) copy.outputs.push_back(flip(e));
    out.mutable_groups().emplace(gid, copy);
  }
  out.mutable_input_dims() = d.output_dims();
  out.mutable_output_dims() = d.input_dims();
  out.set_scalar(std::conj(d.scalar()));
  out.finish();
  return out;
}

Diagram scaled(const Diagram& d, Complex s) {
  Diagram out = d;
  out.multiply_scalar(s);
  return out;
}

Diagram multiplier(int m, Dim dim) {
  const int k = mod(m, dim);
  if (k == 0) {
    // x -> 0: discard the input and prepare |0>.
    return tensor(z_spider(1, 0, dim), x_spider(0, 1, dim, 0));
  }
  Diagram d;
  const int z = d.add_node(ZSpider{std::vector<Complex>(dim - 1, 1.0), 0}, 1, k);
  const int x = d.add_node(XSpider{dim, 0}, k, 1);
  d.connect(d.add_input(dim), Endpoint::port(z, 0), dim);
  for (int i = 0; i < k; ++i) {
    d.connect(Endpoint::port(z, 1 + i), Endpoint::port(x, i), dim);
  }
  d.connect(Endpoint::port(x, k), d.add_output(dim), dim);
  d.finish();
  return d;
}

}  // namespace spinzx
