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

#include "spinzx/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace spinzx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int mod(int a, int d) { return ((a % d) + d) % d; }

std::size_t product(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

// Calls f(index) for every multi-index over `dims` in row-major order.
template <class F>
void for_each_index(const std::vector<int>& dims, F&& f) {
  std::vector<int> idx(dims.size(), 0);
  const std::size_t total = product(dims);
  for (std::size_t n = 0; n < total; ++n) {
    f(idx);
    for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < dims[static_cast<std::size_t>(a)]) {
        break;
      }
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
}

// A tensor in the contraction network. Each axis carries a label: the wire
// index for internal wires, or a boundary label.
struct Net {
  std::vector<int> labels;
  std::vector<int> dims;
  std::vector<Complex> data;
};

constexpr int kInputLabel = 1 << 28;
constexpr int kOutputLabel = 1 << 29;

Net permuted(const Net& t, const std::vector<int>& perm) {
  Tensor src(t.dims, 0, t.data);
  Tensor dst = permute_axes(src, perm, 0);
  Net out;
  for (int p : perm) {
    out.labels.push_back(t.labels[static_cast<std::size_t>(p)]);
    out.dims.push_back(t.dims[static_cast<std::size_t>(p)]);
  }
  out.data = std::move(dst.data());
  return out;
}

// Traces out pairs of axes that share a label, which happens for self-loops.
Net trace_repeated(Net t) {
  while (true) {
    int a = -1;
    int b = -1;
    for (std::size_t i = 0; i < t.labels.size() && a < 0; ++i) {
      for (std::size_t j = i + 1; j < t.labels.size(); ++j) {
        if (t.labels[i] == t.labels[j]) {
          a = static_cast<int>(i);
          b = static_cast<int>(j);
          break;
        }
      }
    }
    if (a < 0) return t;
    std::vector<int> perm;
    for (int i = 0; i < static_cast<int>(t.labels.size()); ++i) {
      if (i != a && i != b) perm.push_back(i);
    }
    perm.push_back(a);
    perm.push_back(b);
    Net p = permuted(t, perm);
    const int d = p.dims.back();
    Net out;
    out.labels.assign(p.labels.begin(), p.labels.end() - 2);
    out.dims.assign(p.dims.begin(), p.dims.end() - 2);
    const std::size_t rest = product(out.dims);
    out.data.assign(rest, Complex(0));
    for (std::size_t r = 0; r < rest; ++r) {
      for (int k = 0; k < d; ++k) {
        out.data[r] += p.data[r * static_cast<std::size_t>(d * d) +
                              static_cast<std::size_t>(k * d + k)];
      }
    }
    t = std::move(out);
  }
}

Net contract_pair(const Net& a, const Net& b) {
  std::vector<int> shared;
  for (int l : a.labels) {
    if (std::find(b.labels.begin(), b.labels.end(), l) != b.labels.end()) {
      shared.push_back(l);
    }
  }
  std::sort(shared.begin(), shared.end());
  auto position = [](const Net& t, int label) {
    return static_cast<int>(
        std::find(t.labels.begin(), t.labels.end(), label) - t.labels.begin());
  };
  std::vector<int> pa;
  std::vector<int> pb;
  for (int i = 0; i < static_cast<int>(a.labels.size()); ++i) {
    if (!std::binary_search(shared.begin(), shared.end(), a.labels[i])) {
      pa.push_back(i);
    }
  }
  for (int l : shared) pa.push_back(position(a, l));
  for (int l : shared) pb.push_back(position(b, l));
  for (int i = 0; i < static_cast<int>(b.labels.size()); ++i) {
    if (!std::binary_search(shared.begin(), shared.end(), b.labels[i])) {
      pb.push_back(i);
    }
  }
  Net ap = permuted(a, pa);
  Net bp = permuted(b, pb);
  const std::size_t ns = shared.size();
  std::size_t s = 1;
  for (std::size_t k = 0; k < ns; ++k) s *= static_cast<std::size_t>(ap.dims[ap.dims.size() - ns + k]);
  const std::size_t fa = ap.data.size() / s;
  const std::size_t fb = bp.data.size() / s;
  using RowMajor =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> ma(ap.data.data(), static_cast<Eigen::Index>(fa),
                                static_cast<Eigen::Index>(s));
  Eigen::Map<const RowMajor> mb(bp.data.data(), static_cast<Eigen::Index>(s),
                                static_cast<Eigen::Index>(fb));
  Net out;
  out.labels.assign(ap.labels.begin(), ap.labels.end() - static_cast<long>(ns));
  out.dims.assign(ap.dims.begin(), ap.dims.end() - static_cast<long>(ns));
  out.labels.insert(out.labels.end(), bp.labels.begin() + static_cast<long>(ns),
                    bp.labels.end());
  out.dims.insert(out.dims.end(), bp.dims.begin() + static_cast<long>(ns),
                  bp.dims.end());
  out.data.assign(fa * fb, Complex(0));
  Eigen::Map<RowMajor> mo(out.data.data(), static_cast<Eigen::Index>(fa),
                          static_cast<Eigen::Index>(fb));
  mo.noalias() = ma * mb;
  return out;
}

std::size_t result_size(const Net& a, const Net& b, int* min_shared) {
  std::size_t size = 1;
  *min_shared = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    auto it = std::find(b.labels.begin(), b.labels.end(), a.labels[i]);
    if (it == b.labels.end()) {
      size *= static_cast<std::size_t>(a.dims[i]);
    } else {
      *min_shared = std::min(*min_shared, a.labels[i]);
    }
  }
  for (std::size_t j = 0; j < b.labels.size(); ++j) {
    if (std::find(a.labels.begin(), a.labels.end(), b.labels[j]) ==
        a.labels.end()) {
      size *= static_cast<std::size_t>(b.dims[j]);
    }
  }
  return size;
}

}  // namespace

Tensor node_tensor(const Node& node, const std::vector<int>& legs) {
  const int n_in = node.n_in;
  Tensor t(legs, n_in);
  auto set = [&](const std::vector<int>& idx, Complex v) {
    t[t.flat_index(idx)] = v;
  };
  std::visit(
      overloaded{
          [&](const ZSpider& z) {
            if (legs.empty()) {
              Complex s = 1.0;
              for (auto a : z.params) s += a;
              t[0] = s;
              return;
            }
            const int m = *std::min_element(legs.begin(), legs.end());
            for (int j = 0; j < m; ++j) {
              std::vector<int> idx(legs.size(), j);
              set(idx, j == 0 ? Complex(1.0) : z.params[static_cast<std::size_t>(j - 1)]);
            }
          },
          [&](const XSpider& x) {
            if (legs.empty()) {
              t[0] = x.phase % x.dim == 0 ? 1.0 : 0.0;
              return;
            }
            // Fix every leg but the last, then solve for the last one.
            std::vector<int> head(legs.begin(), legs.end() - 1);
            const int last = static_cast<int>(legs.size()) - 1;
            const bool last_is_input = last < n_in;
            for_each_index(head, [&](const std::vector<int>& h) {
              int sum_in = 0;
              int sum_out = 0;
              for (int p = 0; p < last; ++p) {
                (p < n_in ? sum_in : sum_out) += h[static_cast<std::size_t>(p)];
              }
              // Constraint: sum_out + phase == sum_in (mod d).
              const int v = last_is_input
                                ? mod(sum_out + x.phase - sum_in, x.dim)
                                : mod(sum_in - sum_out - x.phase, x.dim);
              std::vector<int> idx = h;
              idx.push_back(v);
              set(idx, 1.0);
            });
          },
          [&](const Hadamard& h) {
            const int d = h.dim;
            const double norm = 1.0 / std::sqrt(static_cast<double>(d));
            for (int k = 0; k < d; ++k) {
              for (int j = 0; j < d; ++j) {
                const double angle =
                    2.0 * std::numbers::pi * static_cast<double>(mod(j * k, d)) / d;
                Complex w = std::polar(norm, h.dagger ? -angle : angle);
                set({k, j}, w);
              }
            }
          },
          [&](const Dualiser& u) {
            for (int i = 0; i < u.dim; ++i) set({i, mod(-i, u.dim)}, 1.0);
          },
          [&](const WNode& w) {
            // Undaggered axes: (in, out0, out1). Daggered: (in0, in1, out).
            auto put = [&](int i, int a, int b) {
              if (w.dagger) {
                set({a, b, i}, 1.0);
              } else {
                set({i, a, b}, 1.0);
              }
            };
            put(0, 0, 0);
            for (int i = 1; i < w.dim; ++i) {
              put(i, 0, i);
              put(i, i, 0);
            }
          },
          [&](const Triangle& tr) {
            // Undaggered map: |k> -> |k>, plus |0> -> sum_{i>=1} |i>.
            auto put = [&](int in, int out) {
              if (tr.dagger) {
                set({out, in}, 1.0);
              } else {
                set({in, out}, 1.0);
              }
            };
            for (int k = 0; k < tr.dim; ++k) put(k, k);
            for (int i = 1; i < tr.dim; ++i) put(0, i);
          },
          [&](const DimSplit& s) {
            for (int i = 0; i < s.d1; ++i) {
              for (int k = 0; k < s.d2; ++k) {
                if (s.dagger) {
                  set({i, k, i * s.d2 + k}, 1.0);
                } else {
                  set({i * s.d2 + k, i, k}, 1.0);
                }
              }
            }
          },
          [&](const MatrixBox& m) {
            t = Tensor::from_matrix(m.entries, m.in_dims, m.out_dims);
          },
      },
      node.kind);
  return t;
}

Tensor evaluate(const Diagram& d, const EvalConfig& config) {
  const auto& wires = d.wires();
  std::map<int, std::vector<int>> port_labels;
  for (const auto& [id, n] : d.nodes()) {
    port_labels[id] = std::vector<int>(static_cast<std::size_t>(n.arity()), -1);
  }
  auto boundary_label = [](const Endpoint& e) {
    return e.type == Endpoint::Type::kInput ? kInputLabel + e.index
                                            : kOutputLabel + e.index;
  };
  std::vector<Net> nets;
  for (std::size_t w = 0; w < wires.size(); ++w) {
    const Wire& wire = wires[w];
    if (wire.a.is_boundary() && wire.b.is_boundary()) {
      Net delta;
      delta.labels = {boundary_label(wire.a), boundary_label(wire.b)};
      delta.dims = {wire.dim, wire.dim};
      delta.data.assign(static_cast<std::size_t>(wire.dim * wire.dim), 0.0);
      for (int k = 0; k < wire.dim; ++k) {
        delta.data[static_cast<std::size_t>(k * wire.dim + k)] = 1.0;
      }
      nets.push_back(std::move(delta));
      continue;
    }
    const bool internal = wire.a.is_port() && wire.b.is_port();
    for (const Endpoint* e : {&wire.a, &wire.b}) {
      if (!e->is_port()) continue;
      const Endpoint& other = wire.other(*e);
      port_labels[e->node][static_cast<std::size_t>(e->index)] =
          internal ? static_cast<int>(w) : boundary_label(other);
    }
  }
  for (const auto& [id, n] : d.nodes()) {
    Tensor t = node_tensor(n, d.leg_dims(id));
    if (t.size() > config.max_total_entries) {
      throw SizeExceeded("node " + std::to_string(id) + " needs " +
                         std::to_string(t.size()) + " entries, above the limit of " +
                         std::to_string(config.max_total_entries));
    }
    Net net;
    net.labels = port_labels[id];
    net.dims = t.shape();
    net.data = std::move(t.data());
    nets.push_back(trace_repeated(std::move(net)));
  }

  while (nets.size() > 1) {
    // Prefer pairs that share a wire; among them the smallest product.
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    int best_shared = std::numeric_limits<int>::max();
    int bi = -1;
    int bj = -1;
    for (std::size_t i = 0; i < nets.size(); ++i) {
      for (std::size_t j = i + 1; j < nets.size(); ++j) {
        int min_shared = 0;
        const std::size_t size = result_size(nets[i], nets[j], &min_shared);
        if (min_shared == std::numeric_limits<int>::max()) continue;
        if (size < best_size || (size == best_size && min_shared < best_shared)) {
          best_size = size;
          best_shared = min_shared;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    }
    if (config.order == ContractionOrder::kSequential) {
      // Absorb the next tensor that touches the first one, else the next one.
      bi = 0;
      bj = 1;
      for (std::size_t j = 1; j < nets.size(); ++j) {
        int min_shared = 0;
        const std::size_t size = result_size(nets[0], nets[j], &min_shared);
        if (min_shared != std::numeric_limits<int>::max()) {
          bj = static_cast<int>(j);
          best_size = size;
          break;
        }
      }
      if (bj == 1) {
        int min_shared = 0;
        best_size = result_size(nets[0], nets[1], &min_shared);
      }
    } else if (bi < 0) {
      // Disconnected pieces: outer product of the two smallest.
      std::vector<std::size_t> order(nets.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return nets[x].data.size() < nets[y].data.size();
      });
      bi = static_cast<int>(std::min(order[0], order[1]));
      bj = static_cast<int>(std::max(order[0], order[1]));
      best_size = nets[order[0]].data.size() * nets[order[1]].data.size();
    }
    if (best_size > config.max_total_entries) {
      throw SizeExceeded("contraction would create an intermediate tensor of " +
                         std::to_string(best_size) +
                         " entries, above the limit of " +
                         std::to_string(config.max_total_entries));
    }
    Net c = contract_pair(nets[static_cast<std::size_t>(bi)],
                          nets[static_cast<std::size_t>(bj)]);
    nets.erase(nets.begin() + bj);
    nets[static_cast<std::size_t>(bi)] = std::move(c);
  }

  std::vector<int> shape(d.input_dims());
  shape.insert(shape.end(), d.output_dims().begin(), d.output_dims().end());
  if (nets.empty()) {
    Tensor t(shape, d.n_inputs());
    t[0] = d.scalar();
    return t;
  }
  Net& last = nets.front();
  std::vector<int> perm;
  for (int i = 0; i < d.n_inputs(); ++i) {
    perm.push_back(static_cast<int>(
        std::find(last.labels.begin(), last.labels.end(), kInputLabel + i) -
        last.labels.begin()));
  }
  for (int o = 0; o < d.n_outputs(); ++o) {
    perm.push_back(static_cast<int>(
        std::find(last.labels.begin(), last.labels.end(), kOutputLabel + o) -
        last.labels.begin()));
  }
  Net ordered = permuted(last, perm);
  Tensor t(shape, d.n_inputs(), std::move(ordered.data));
  for (auto& v : t.data()) {
    v *= d.scalar();
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericOverflow("evaluation produced a non-finite entry");
    }
  }
  return t;
}

Tensor evaluate(const DiagramSum& sum, const EvalConfig& config) {
  if (sum.terms.empty()) throw ShapeMismatch("empty diagram sum");
  Tensor acc = evaluate(sum.terms.front().second, config);
  for (auto& v : acc.data()) v *= sum.terms.front().first;
  for (std::size_t i = 1; i < sum.terms.size(); ++i) {
    Tensor t = evaluate(sum.terms[i].second, config);
    if (t.shape() != acc.shape() || t.n_inputs() != acc.n_inputs()) {
      throw BoundaryMismatch("diagram sum terms have different boundaries");
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      acc[k] += sum.terms[i].first * t[k];
    }
  }
  return acc;
}

Complex evaluate_scalar(const Diagram& d, const EvalConfig& config) {
  if (d.n_inputs() != 0 || d.n_outputs() != 0) {
    throw NotClosed("diagram has " + std::to_string(d.n_inputs()) +
                    " inputs and " + std::to_string(d.n_outputs()) +
                    " outputs; a scalar needs none");
  }
  return evaluate(d, config).scalar();
}

Matrix evaluate_matrix(const Diagram& d, const EvalConfig& config) {
  return evaluate(d, config).matrix();
}

Matrix evaluate_matrix(const DiagramSum& sum, const EvalConfig& config) {
  return evaluate(sum, config).matrix();
}

bool equal_up_to(const Tensor& a, const Tensor& b, double tolerance) {
  if (a.shape() != b.shape()) return false;
  return max_abs_diff(a, b) <= tolerance;
}

bool tensors_close(const Tensor& a, const Tensor& b, const EvalConfig& config) {
  if (a.shape() != b.shape()) {
    throw ShapeMismatch("cannot compare tensors of different shapes");
  }
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  return max_abs_diff(a, b) <= config.tolerance * scale;
}

std::optional<Complex> proportional(const Tensor& a, const Tensor& b,
                                    const EvalConfig& config) {
  if (a.shape() != b.shape()) {
    throw ShapeMismatch("cannot compare tensors of different shapes");
  }
  const double bmax = b.max_abs();
  if (bmax == 0.0) {
    if (a.max_abs() <= config.tolerance) return Complex(0.0);
    return std::nullopt;
  }
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (std::abs(b[i]) > std::abs(b[pivot])) pivot = i;
  }
  const Complex lambda = a[pivot] / b[pivot];
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - lambda * b[i]));
  }
  if (worst <= config.tolerance * bmax) return lambda;
  return std::nullopt;
}

}  // namespace spinzx
