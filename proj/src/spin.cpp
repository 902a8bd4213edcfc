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

#include "spinzx/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "spinzx/errors.hpp"

namespace spinzx {

namespace {

const Complex kI(0.0, 1.0);

double binom(int n, int k) {
  return std::exp(ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k));
}

// Dimension of the spin-j wire; spin 0 has no wire.
Dim spin_dim(SpinLabel j) {
  if (j.twice() < 1) {
    throw DimMismatch("spin " + j.str() + " has no wire of dim >= 2");
  }
  return Dim(j.dim());
}

// Marks the whole diagram as one group whose boundary ports face the
// diagram boundary.
Diagram tag_group(Diagram d, const std::string& label, int size) {
  Group g{label, size, {}, {}};
  auto inner = [&](const Endpoint& boundary) {
    const int w = d.wire_at(boundary);
    const Endpoint other = d.wires()[static_cast<std::size_t>(w)].other(boundary);
    if (!other.is_port()) {
      throw ValidationError("group '" + label +
                            "' has a boundary wire with no node");
    }
    return other;
  };
  for (int i = 0; i < d.n_inputs(); ++i) g.inputs.push_back(inner(Endpoint::input(i)));
  for (int i = 0; i < d.n_outputs(); ++i) g.outputs.push_back(inner(Endpoint::output(i)));
  const int gid = d.add_group(std::move(g));
  for (auto& [id, n] : d.mutable_nodes()) n.group = gid;
  d.finish();
  return d;
}

Diagram x_state(Dim dim, int index) { return x_spider(0, 1, dim, -index); }

std::vector<int> qubits(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

}  // namespace

namespace params {

std::vector<Complex> sqrt_binom(int n) {
  std::vector<Complex> a;
  for (int k = 1; k <= n; ++k) a.emplace_back(1.0 / std::sqrt(binom(n, k)));
  return a;
}

std::vector<Complex> alt_sign(int n) {
  std::vector<Complex> a;
  for (int k = 1; k <= n; ++k) a.emplace_back(k % 2 == 0 ? 1.0 : -1.0);
  return a;
}

std::vector<Complex> alt_binom(int x) {
  std::vector<Complex> a;
  for (int k = 1; k <= x; ++k) {
    a.emplace_back((k % 2 == 0 ? 1.0 : -1.0) * std::round(binom(x, k)));
  }
  return a;
}

std::vector<Complex> ladder_L(SpinLabel j) {
  const int n = j.twice();
  spin_dim(j);
  std::vector<Complex> a;
  for (int k = 1; k <= n; ++k) {
    a.emplace_back(std::sqrt(static_cast<double>((k + 1) * (n - k)) / n));
  }
  return a;
}

std::vector<Complex> diag_A(SpinLabel j) {
  spin_dim(j);
  std::vector<Complex> a;
  for (int k = 1; k <= j.twice(); ++k) a.emplace_back((j.value() - k) / j.value());
  return a;
}

}  // namespace params

Diagram embed_isometry(SpinLabel j) {
  const Dim dim = spin_dim(j);
  const int n = j.twice();
  Diagram d;
  const int z = d.add_node(ZSpider{params::sqrt_binom(n), 0}, 1, 1);
  const int x = d.add_node(XSpider{dim, 0}, 1, n);
  d.connect(d.add_input(dim), Endpoint::port(z, 0), dim);
  d.connect(Endpoint::port(z, 1), Endpoint::port(x, 0), dim);
  for (int i = 0; i < n; ++i) {
    const int m = d.add_node(ZSpider{{1.0}, 0}, 1, 1);
    d.connect(Endpoint::port(x, 1 + i), Endpoint::port(m, 0), dim);
    d.connect(Endpoint::port(m, 1), d.add_output(2), 2);
  }
  d.finish();
  return d;
}

Diagram symmetriser(int n) {
  if (n < 1) throw ArityMismatch("symmetriser needs at least one qubit");
  const Diagram v = embed_isometry(SpinLabel(n));
  return tag_group(compose(adjoint(v), v), kSymmetriserGroup, n);
}

Diagram magnetic_state(SpinLabel j, MagneticLabel m) {
  return x_state(spin_dim(j), basis_index(j, m));
}

Diagram wire_reverser(SpinLabel j) {
  const Dim dim = spin_dim(j);
  return compose({z_spider(1, 1, dim, params::alt_sign(j.twice())), dualiser(dim),
                  x_spider(1, 1, dim, 1)});
}

Diagram spin_cup(SpinLabel j) {
  const Dim dim = spin_dim(j);
  const Diagram d = compose(tensor(identity(dim), wire_reverser(j)), cap(dim));
  return scaled(d, -std::sqrt(static_cast<double>(j.dim())));
}

Diagram spin_cap(SpinLabel j) { return adjoint(spin_cup(j)); }

Diagram singlet_effect() {
  const Diagram flip = compose(x_spider(1, 1, 2, 1), z_spider(1, 1, 2, {-1.0}));
  return tag_group(compose(tensor(identity(2), flip), cap(2)),
                   kSingletEffectGroup, 2);
}

Diagram singlet_state() {
  Diagram d = adjoint(singlet_effect());
  d.dissolve_group(0);
  return tag_group(d, kSingletStateGroup, 2);
}

namespace {

void require_admissible(const SpinTriple& t) {
  if (!t.admissible()) {
    throw InadmissibleTriple("spins (" + t.j1.str() + ", " + t.j2.str() +
                             ", " + t.j3.str() + ") are not admissible");
  }
}

}  // namespace

Diagram three_j_state(const SpinTriple& t) {
  require_admissible(t);
  const int twice[3] = {t.j1.twice(), t.j2.twice(), t.j3.twice()};
  Diagram d;
  // Per bundle: X spider summing pair counts, then the 1/sqrt(C) weights.
  int sum_node[3] = {-1, -1, -1};
  int next_in[3] = {0, 0, 0};
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  const int x[3] = {t.x12(), t.x13(), t.x23()};
  for (int k = 0; k < 3; ++k) {
    if (twice[k] == 0) continue;
    int count = 0;
    for (int p = 0; p < 3; ++p) {
      if (x[p] > 0 && (pairs[p][0] == k || pairs[p][1] == k)) ++count;
    }
    const int dim = twice[k] + 1;
    sum_node[k] = d.add_node(XSpider{dim, 0}, count, 1);
    const int weight = d.add_node(ZSpider{params::sqrt_binom(twice[k]), 0}, 1, 1);
    d.connect(Endpoint::port(sum_node[k], count), Endpoint::port(weight, 0), dim);
    d.connect(Endpoint::port(weight, 1), d.add_output(dim), dim);
  }
  auto embed = [&](Endpoint from, int x_dim, int bundle) {
    const int dim = twice[bundle] + 1;
    const int m = d.add_node(ZSpider{std::vector<Complex>(x_dim - 1, 1.0), 0}, 1, 1);
    d.connect(from, Endpoint::port(m, 0), x_dim);
    d.connect(Endpoint::port(m, 1),
              Endpoint::port(sum_node[bundle], next_in[bundle]++), dim);
  };
  for (int p = 0; p < 3; ++p) {
    if (x[p] == 0) continue;
    const int xd = x[p] + 1;
    const int source = d.add_node(ZSpider{params::alt_binom(x[p]), 0}, 0, 2);
    embed(Endpoint::port(source, 0), xd, pairs[p][0]);
    // The second leg carries x - t.
    const int du = d.add_node(Dualiser{xd}, 1, 1);
    const int shift = d.add_node(XSpider{xd, 1}, 1, 1);
    d.connect(Endpoint::port(source, 1), Endpoint::port(du, 0), xd);
    d.connect(Endpoint::port(du, 1), Endpoint::port(shift, 0), xd);
    embed(Endpoint::port(shift, 1), xd, pairs[p][1]);
  }
  const double sign = t.x13() % 2 == 0 ? 1.0 : -1.0;
  d.set_scalar(sign / normalisation_N(t));
  d.finish();
  return d;
}

Diagram three_j_state_railroad(const SpinTriple& t) {
  require_admissible(t);
  const int x[3] = {t.x12(), t.x13(), t.x23()};
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<Diagram> singlets;
  std::vector<int> bundle_of;
  for (int p = 0; p < 3; ++p) {
    for (int i = 0; i < x[p]; ++i) {
      singlets.push_back(singlet_state());
      bundle_of.push_back(pairs[p][0]);
      bundle_of.push_back(pairs[p][1]);
    }
  }
  std::vector<int> order(bundle_of.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return bundle_of[a] < bundle_of[b]; });
  std::vector<Diagram> projections;
  for (SpinLabel j : {t.j1, t.j2, t.j3}) {
    if (j.twice() > 0) projections.push_back(adjoint(embed_isometry(j)));
  }
  const double sign = t.x13() % 2 == 0 ? 1.0 : -1.0;
  Diagram d = compose({tensor(singlets),
                       permutation(qubits(static_cast<int>(order.size())), order),
                       tensor(projections)});
  return scaled(d, sign / normalisation_N(t));
}

Diagram injection(const SpinTriple& t) {
  require_admissible(t);
  const Dim d3 = spin_dim(t.j3);
  const Diagram state = three_j_state(t);
  std::vector<int> kept = state.output_dims();
  kept.pop_back();
  const double sign = t.x13() % 2 == 0 ? 1.0 : -1.0;
  const Diagram d = compose(tensor(state, wire_reverser(t.j3)),
                            tensor(identity_wires(kept), cap(d3)));
  return scaled(d, sign * std::sqrt(static_cast<double>(t.j3.dim())));
}

Diagram wigner_diagram(SpinLabel j, const Matrix& u) {
  const Diagram v = embed_isometry(j);
  return compose({v, tensor_power(matrix_box(u, {2}, {2}), j.twice()), adjoint(v)});
}

Diagram ladder_diagram(SpinLabel j, Ladder direction) {
  const Dim dim = spin_dim(j);
  const Diagram raise =
      scaled(compose(x_spider(1, 1, dim, 1), z_spider(1, 1, dim, params::ladder_L(j))),
             std::sqrt(static_cast<double>(j.twice())));
  return direction == Ladder::kRaise ? raise : adjoint(raise);
}

Diagram j3_diagram(SpinLabel j) {
  return scaled(z_spider(1, 1, spin_dim(j), params::diag_A(j)), j.value());
}

Diagram j1_diagram(SpinLabel j) {
  const Dim dim = spin_dim(j);
  return compose(tensor(x_state(2, 1), identity(dim)), controlled_J(1, j));
}

Diagram j2_diagram(SpinLabel j) {
  const Dim dim = spin_dim(j);
  return compose(tensor(x_state(2, 1), identity(dim)), controlled_J(2, j));
}

Diagram controlled_diagonal(const std::vector<Complex>& lambda) {
  const Dim dim(static_cast<int>(lambda.size()));
  std::vector<Complex> a(static_cast<std::size_t>(2 * dim - 1), 1.0);
  for (int k = 0; k < dim; ++k) a[static_cast<std::size_t>(dim + k - 1)] = lambda[k];
  return compose({dim_merge(2, dim), z_spider(1, 1, 2 * dim, a), dim_split(2, dim)});
}

Diagram controlled_shift(int shift, Dim dim) {
  if (shift != 1 && shift != -1) {
    throw ValidationError("controlled_shift supports shifts of +1 and -1");
  }
  Diagram d;
  const Endpoint ci = d.add_input(2);
  const Endpoint ti = d.add_input(dim);
  const int z = d.add_node(ZSpider{{1.0}, 0}, 1, 2);
  d.connect(ci, Endpoint::port(z, 0), 2);
  d.connect(Endpoint::port(z, 1), d.add_output(2), 2);
  if (shift == 1) {
    const int x = d.add_node(XSpider{dim, 0}, 1, 2);
    d.connect(ti, Endpoint::port(x, 0), dim);
    d.connect(Endpoint::port(x, 1), d.add_output(dim), dim);
    d.connect(Endpoint::port(z, 2), Endpoint::port(x, 2), dim);
  } else {
    const int x = d.add_node(XSpider{dim, 0}, 2, 1);
    d.connect(ti, Endpoint::port(x, 0), dim);
    d.connect(Endpoint::port(z, 2), Endpoint::port(x, 1), dim);
    d.connect(Endpoint::port(x, 2), d.add_output(dim), dim);
  }
  d.finish();
  return d;
}

Diagram consume_control(const Diagram& passing, const std::vector<int>& target_dims) {
  return compose(passing, tensor(z_spider(1, 0, 2), identity_wires(target_dims)));
}

namespace {

Diagram fan_out(const Diagram& splitter, const std::vector<Diagram>& consumers,
                std::size_t from, const std::vector<int>& dims) {
  if (from + 1 == consumers.size()) return consumers[from];
  std::vector<int> all = {2, 2};
  all.insert(all.end(), dims.begin(), dims.end());
  std::vector<int> perm(all.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::swap(perm[0], perm[1]);
  return compose({tensor(splitter, identity_wires(dims)), permutation(all, perm),
                  tensor(identity(2), consumers[from]),
                  fan_out(splitter, consumers, from + 1, dims)});
}

}  // namespace

Diagram controlled_sum(const std::vector<Diagram>& consumers,
                       const std::vector<int>& target_dims) {
  if (consumers.empty()) throw ArityMismatch("controlled_sum needs a consumer");
  return fan_out(w_node(2), consumers, 0, target_dims);
}

Diagram controlled_product(const std::vector<Diagram>& consumers,
                           const std::vector<int>& target_dims) {
  if (consumers.empty()) throw ArityMismatch("controlled_product needs a consumer");
  return fan_out(z_copy({2}, {2, 2}), consumers, 0, target_dims);
}

Diagram on_wire(const Diagram& consumer, int wire, const std::vector<int>& target_dims) {
  const int n = static_cast<int>(target_dims.size());
  if (wire < 0 || wire >= n) throw ArityMismatch("on_wire: wire out of range");
  if (n == 1) return consumer;
  std::vector<int> in_dims = {2};
  in_dims.insert(in_dims.end(), target_dims.begin(), target_dims.end());
  std::vector<int> gather = {0, 1 + wire};
  std::vector<int> others;
  for (int i = 0; i < n; ++i) {
    if (i != wire) {
      gather.push_back(1 + i);
      others.push_back(target_dims[static_cast<std::size_t>(i)]);
    }
  }
  std::vector<int> moved = {target_dims[static_cast<std::size_t>(wire)]};
  moved.insert(moved.end(), others.begin(), others.end());
  std::vector<int> scatter(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) scatter[i] = i == wire ? 0 : (i < wire ? i + 1 : i);
  return compose({permutation(in_dims, gather), tensor(consumer, identity_wires(others)),
                  permutation(moved, scatter)});
}

namespace {

// Passing-control J+ and J- with a coefficient folded into the diagonal.
Diagram controlled_ladder(SpinLabel j, Ladder direction, Complex alpha) {
  const Dim dim = spin_dim(j);
  const std::vector<Complex> l = params::ladder_L(j);
  std::vector<Complex> lambda = {1.0};
  lambda.insert(lambda.end(), l.begin(), l.end());
  for (auto& c : lambda) c *= alpha * std::sqrt(static_cast<double>(j.twice()));
  if (direction == Ladder::kRaise) {
    return compose(controlled_shift(1, dim), controlled_diagonal(lambda));
  }
  return compose(controlled_diagonal(lambda), controlled_shift(-1, dim));
}

}  // namespace

Diagram controlled_J(int axis, SpinLabel j) {
  const Dim dim = spin_dim(j);
  switch (axis) {
    case 1:
      return controlled_sum(
          {consume_control(controlled_ladder(j, Ladder::kRaise, 0.5), {dim}),
           consume_control(controlled_ladder(j, Ladder::kLower, 0.5), {dim})},
          {dim});
    case 2:
      return controlled_sum(
          {consume_control(controlled_ladder(j, Ladder::kRaise, -0.5 * kI), {dim}),
           consume_control(controlled_ladder(j, Ladder::kLower, 0.5 * kI), {dim})},
          {dim});
    case 3: {
      std::vector<Complex> lambda;
      for (int k = 0; k < dim; ++k) lambda.emplace_back(j.value() - k);
      return consume_control(controlled_diagonal(lambda), {dim});
    }
    default:
      throw ValidationError("axis must be 1, 2 or 3, got " + std::to_string(axis));
  }
}

Diagram hamiltonian_diagram(const std::vector<SpinLabel>& spins,
                            const std::vector<HamiltonianTerm>& terms) {
  if (terms.empty()) throw EmptyHamiltonian("Hamiltonian has no terms");
  if (spins.empty()) throw EmptyHamiltonian("Hamiltonian acts on no wires");
  std::vector<int> dims;
  for (SpinLabel j : spins) dims.push_back(spin_dim(j));
  std::vector<Diagram> consumers;
  for (const auto& term : terms) {
    if (!term.factors.empty() && term.factors.size() != spins.size()) {
      throw ArityMismatch("Hamiltonian term has " + std::to_string(term.factors.size()) +
                          " factors for " + std::to_string(spins.size()) + " wires");
    }
    std::vector<Diagram> parts;
    for (std::size_t i = 0; i < term.factors.size(); ++i) {
      const auto& f = term.factors[i];
      if (f.power < 0) throw ValidationError("negative power in Hamiltonian term");
      if (f.axis == 0) continue;
      const Diagram one = on_wire(controlled_J(f.axis, spins[i]), static_cast<int>(i), dims);
      for (int p = 0; p < f.power; ++p) parts.push_back(one);
    }
    const Complex alpha = term.coefficient;
    if (parts.empty()) {
      consumers.push_back(tensor(z_spider(1, 0, 2, {alpha}), identity_wires(dims)));
    } else {
      consumers.push_back(compose(tensor(z_spider(1, 1, 2, {alpha}), identity_wires(dims)),
                                  controlled_product(parts, dims)));
    }
  }
  return compose(tensor(x_state(2, 1), identity_wires(dims)),
                 controlled_sum(consumers, dims));
}

Diagram controlled_pauli(char which) {
  switch (which) {
    case 'x':
    case 'X': {
      Diagram d;
      const Endpoint ci = d.add_input(2);
      const Endpoint ti = d.add_input(2);
      const int z = d.add_node(ZSpider{{1.0}, 0}, 1, 2);
      const int x = d.add_node(XSpider{2, 0}, 2, 1);
      d.connect(ci, Endpoint::port(z, 0), 2);
      d.connect(Endpoint::port(z, 1), d.add_output(2), 2);
      d.connect(ti, Endpoint::port(x, 0), 2);
      d.connect(Endpoint::port(z, 2), Endpoint::port(x, 1), 2);
      d.connect(Endpoint::port(x, 2), d.add_output(2), 2);
      d.finish();
      return d;
    }
    case 'z':
    case 'Z': {
      Diagram d;
      const Endpoint ci = d.add_input(2);
      const Endpoint ti = d.add_input(2);
      const int z = d.add_node(ZSpider{{1.0}, 0}, 1, 2);
      const int h = d.add_node(Hadamard{2, false}, 1, 1);
      const int t = d.add_node(ZSpider{{1.0}, 0}, 2, 1);
      d.connect(ci, Endpoint::port(z, 0), 2);
      d.connect(Endpoint::port(z, 1), d.add_output(2), 2);
      d.connect(Endpoint::port(z, 2), Endpoint::port(h, 0), 2);
      d.connect(ti, Endpoint::port(t, 0), 2);
      d.connect(Endpoint::port(h, 1), Endpoint::port(t, 1), 2);
      d.connect(Endpoint::port(t, 2), d.add_output(2), 2);
      d.set_scalar(std::sqrt(2.0));
      d.finish();
      return d;
    }
    case 'y':
    case 'Y':
      return compose({controlled_pauli('z'), controlled_pauli('x'),
                      tensor(z_spider(1, 1, 2, {kI}), identity(2))});
    default:
      throw ValidationError(std::string("unknown Pauli '") + which + "'");
  }
}

Diagram y_rotation(double angle) {
  // S H diag(1, e^{2ia}) H S^dagger e^{-ia} with a = angle / 2.
  const double a = angle / 2.0;
  const Diagram d = compose({z_spider(1, 1, 2, {-kI}), hadamard(2),
                             z_spider(1, 1, 2, {std::exp(2.0 * a * kI)}), hadamard(2),
                             z_spider(1, 1, 2, {kI})});
  return scaled(d, std::exp(-a * kI));
}

Diagram controlled_hadamard() {
  const double quarter = std::numbers::pi / 4.0;
  return compose({tensor(identity(2), y_rotation(-quarter)), controlled_pauli('z'),
                  tensor(identity(2), y_rotation(quarter))});
}

Diagram schur2() {
  return compose({swap(2, 2), controlled_hadamard(), swap(2, 2), controlled_pauli('x')});
}

Diagram p2(double theta) {
  return compose({dim_merge(2, 2), z_spider(1, 1, 4, {1.0, 1.0, std::exp(theta * kI)}),
                  dim_split(2, 2)});
}

Diagram vertex_gate(double theta) {
  const Diagram s = schur2();
  return compose({adjoint(s), p2(theta), s});
}

Diagram dim_splitter(Dim d1, Dim d2) { return dim_split(d1, d2); }

Diagram binor_cup() { return scaled(singlet_effect(), kI); }
Diagram binor_cap() { return scaled(singlet_state(), kI); }
Diagram binor_cross() { return scaled(swap(2, 2), -1.0); }

DiagramSum binor_antisym(int n) {
  if (n < 1) throw ArityMismatch("binor_antisym needs at least one strand");
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = i;
  const double norm = std::exp(-ln_factorial(n));
  DiagramSum sum;
  do {
    std::vector<int> a = p;
    Diagram term = identity_wires(qubits(n));
    int crossings = 0;
    for (bool moved = true; moved;) {
      moved = false;
      for (int i = 0; i + 1 < n; ++i) {
        if (a[i] > a[i + 1]) {
          std::swap(a[i], a[i + 1]);
          term = compose(term, tensor({identity_wires(qubits(i)), binor_cross(),
                                       identity_wires(qubits(n - i - 2))}));
          ++crossings;
          moved = true;
        }
      }
    }
    sum.add((crossings % 2 == 0 ? 1.0 : -1.0) * norm, term);
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

Diagram binor_close(const Diagram& op) {
  const int n = op.n_inputs();
  if (op.input_dims() != qubits(n) || op.output_dims() != qubits(n)) {
    throw BoundaryMismatch("binor_close needs an operator on qubit strands");
  }
  if (n == 0) return op;
  std::vector<int> split(2 * n), merge(2 * n);
  for (int k = 0; k < n; ++k) {
    split[k] = 2 * k;
    split[n + k] = 2 * k + 1;
    merge[2 * k] = k;
    merge[2 * k + 1] = n + k;
  }
  return compose({tensor_power(binor_cap(), n), permutation(qubits(2 * n), split),
                  tensor(op, identity_wires(qubits(n))),
                  permutation(qubits(2 * n), merge), tensor_power(binor_cup(), n)});
}

DiagramSum binor_close(const DiagramSum& op) {
  DiagramSum out;
  for (const auto& [c, d] : op.terms) out.add(c, binor_close(d));
  return out;
}

}  // namespace spinzx
