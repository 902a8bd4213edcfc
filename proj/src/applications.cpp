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

#include "spinzx/applications.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "spinzx/errors.hpp"
#include "spinzx/spin.hpp"

namespace spinzx {

namespace {

const Complex kI(0.0, 1.0);

std::vector<int> qubits(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

std::vector<int> inverse(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  }
  return inv;
}

void check_permutation(const std::vector<int>& perm, std::size_t n) {
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(n);
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) {
    throw InvalidPermutation("expected a permutation of 0.." + std::to_string(n - 1));
  }
}

Diagram sym_or_wires(int n) {
  return n >= 2 ? symmetriser(n) : identity_wires(qubits(n));
}

// Map from the 2J qubits of a tree node to the qubits of its leaves.
Diagram railroad_map(const CouplingNode& node) {
  if (node.is_leaf()) {
    if (node.spin.twice() != 1) {
      throw InadmissibleTree("tree leaves must be spin 1/2, got " + node.spin.str());
    }
    return identity(2);
  }
  const CouplingNode& a = node.children[0];
  const CouplingNode& b = node.children[1];
  const SpinTriple t{a.spin, b.spin, node.spin};
  if (!t.admissible()) {
    throw InadmissibleTree("node (" + a.spin.str() + ", " + b.spin.str() + ") -> " +
                           node.spin.str() + " violates the triangle conditions");
  }
  const int n_in = node.spin.twice();
  const int to_a = t.x13();
  const int links = t.x12();
  Diagram layer = identity_wires(qubits(n_in));
  for (int k = 0; k < links; ++k) layer = tensor(layer, singlet_state());
  // Inputs, then (a-end, b-end) per singlet. Reorder to the two bundles.
  std::vector<int> order;
  for (int k = 0; k < to_a; ++k) order.push_back(k);
  for (int k = 0; k < links; ++k) order.push_back(n_in + 2 * k);
  for (int k = 0; k < links; ++k) order.push_back(n_in + 2 * k + 1);
  for (int k = to_a; k < n_in; ++k) order.push_back(k);
  return compose({layer, permutation(qubits(n_in + 2 * links), order),
                  tensor(sym_or_wires(a.spin.twice()), sym_or_wires(b.spin.twice())),
                  tensor(railroad_map(a), railroad_map(b))});
}

double closed_real(const Diagram& d, const EvalConfig& config) {
  return evaluate_scalar(d, config).real();
}

}  // namespace

Diagram coupling_tree_diagram(const CouplingTree& tree) {
  tree.validate();
  const SpinLabel j = tree.root.spin;
  Diagram root;
  if (j.twice() == 0) {
    root = empty_diagram();
  } else {
    root = compose(magnetic_state(j, tree.m), embed_isometry(j));
  }
  return compose(root, railroad_map(tree.root));
}

Diagram pqc_network(const CouplingTree& bra, const CouplingTree& ket,
                    const std::vector<int>& perm) {
  const auto lb = bra.root.leaves();
  const auto lk = ket.root.leaves();
  if (lb.size() != lk.size()) {
    throw LeafCountMismatch("bra has " + std::to_string(lb.size()) + " leaves, ket has " +
                            std::to_string(lk.size()));
  }
  check_permutation(perm, lk.size());
  const int n = static_cast<int>(lk.size());
  return compose({coupling_tree_diagram(ket), permutation(qubits(n), inverse(perm)),
                  adjoint(coupling_tree_diagram(bra))});
}

PqcResult pqc_amplitude(const CouplingTree& bra, const CouplingTree& ket,
                        const std::vector<int>& perm, PqcMode mode, const EvalConfig& config) {
  PqcResult r;
  if (mode != PqcMode::kOracle) {
    const Diagram b = coupling_tree_diagram(bra);
    const Diagram k = coupling_tree_diagram(ket);
    r.raw = evaluate_scalar(pqc_network(bra, ket, perm), config);
    r.bra_norm = closed_real(compose(b, adjoint(b)), config);
    r.ket_norm = closed_real(compose(k, adjoint(k)), config);
    r.diagram = r.raw / std::sqrt(r.bra_norm * r.ket_norm);
    r.amplitude = *r.diagram;
  }
  if (mode != PqcMode::kDiagram) {
    r.oracle = pqc_amplitude_oracle(bra, ket, perm);
    if (mode == PqcMode::kOracle) r.amplitude = *r.oracle;
  }
  if (mode == PqcMode::kBoth) r.agree = std::abs(*r.diagram - *r.oracle) <= config.tolerance;
  return r;
}

CouplingTree pqc_example_bra() {
  const auto half = CouplingNode::leaf(SpinLabel(1));
  return {CouplingNode::couple(CouplingNode::couple(half, half, SpinLabel(2)), half, SpinLabel(1)),
          MagneticLabel(1)};
}

CouplingTree pqc_example_ket() {
  const auto half = CouplingNode::leaf(SpinLabel(1));
  return {CouplingNode::couple(CouplingNode::couple(half, half, SpinLabel(0)), half, SpinLabel(1)),
          MagneticLabel(1)};
}

std::vector<int> pqc_example_perm() { return {0, 2, 1}; }

// ---------------------------------------------------------------------------
// AKLT.

void AKLTConfig::validate() const {
  if (length < 2) throw ValidationError("AKLT chain needs at least 2 sites");
  if (!site_labels.empty() && static_cast<int>(site_labels.size()) != length) {
    throw ArityMismatch("AKLT chain has " + std::to_string(length) + " sites but " +
                        std::to_string(site_labels.size()) + " labels");
  }
  for (int m : site_labels) {
    if (m < -1 || m > 1) throw InvalidMagnetic("AKLT site label must be +1, 0 or -1");
  }
  for (const auto* e : {&left_edge, &right_edge}) {
    if (*e && (*e)->size() != 2) throw ShapeMismatch("AKLT edge state must have 2 entries");
  }
}

std::array<Matrix, 3> aklt_mps_matrices() {
  const double a = std::sqrt(2.0 / 3.0);
  const double b = 1.0 / std::sqrt(3.0);
  Matrix plus = Matrix::Zero(2, 2);
  plus(1, 0) = a;
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = b;
  zero(1, 1) = -b;
  Matrix minus = Matrix::Zero(2, 2);
  minus(0, 1) = -a;
  return {plus, zero, minus};
}

namespace {

// Spin-1 projector V^dagger on the site's two qubits.
Diagram site_projector() { return adjoint(embed_isometry(SpinLabel(2))); }

void check_chain_size(int length) {
  // Dense state has 4 * 3^N entries.
  if (length > 12) throw SizeExceeded("AKLT chain of " + std::to_string(length) + " sites");
}

Vector default_edge() { return Vector::Constant(2, 1.0 / std::sqrt(2.0)); }

int label_index(int m) { return 1 - m; }

}  // namespace

Diagram aklt_site() {
  // bond -> X -> left qubit; singlet (right qubit, next bond); V^dagger on
  // both qubits; X on the next bond.
  return compose({tensor(x_spider(1, 1, 2, 1), singlet_state()),
                  tensor(site_projector(), x_spider(1, 1, 2, 1))});
}

Diagram aklt_chain(const AKLTConfig& cfg) {
  cfg.validate();
  check_chain_size(cfg.length);
  const int n = cfg.length;
  // Qubits in order: edge, (l_1, r_1), ..., (l_N, r_N), edge, paired as
  // singlets (edge, l_1), (r_1, l_2), ..., (r_N, edge).
  Diagram d = tensor_power(singlet_state(), n + 1);
  std::vector<Diagram> row = {z_spider(1, 1, 2, {-1.0})};
  for (int i = 0; i < n; ++i) row.push_back(site_projector());
  row.push_back(x_spider(1, 1, 2, 1));
  return compose(d, tensor(row));
}

Tensor aklt_mps_oracle(const AKLTConfig& cfg) {
  cfg.validate();
  check_chain_size(cfg.length);
  const auto m = aklt_mps_matrices();
  std::vector<int> shape = {2};
  for (int i = 0; i < cfg.length; ++i) shape.push_back(3);
  shape.push_back(2);
  Tensor t(shape, 0);
  const std::size_t sites = static_cast<std::size_t>(std::pow(3, cfg.length));
  for (std::size_t s = 0; s < sites; ++s) {
    std::size_t rest = s;
    std::vector<int> ks(static_cast<std::size_t>(cfg.length));
    for (int i = cfg.length - 1; i >= 0; --i) {
      ks[static_cast<std::size_t>(i)] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    Matrix p = Matrix::Identity(2, 2);
    for (int k : ks) p = p * m[static_cast<std::size_t>(k)];
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        t.data()[(static_cast<std::size_t>(a) * sites + s) * 2 + static_cast<std::size_t>(b)] =
            p(a, b);
      }
    }
  }
  return t;
}

Matrix spin2_projector() {
  const SpinLabel one(2);
  const SpinLabel two(4);
  Matrix p = Matrix::Zero(9, 9);
  for (int tm = -4; tm <= 4; tm += 2) {
    Vector v = Vector::Zero(9);
    for (int k1 = 0; k1 < 3; ++k1) {
      for (int k2 = 0; k2 < 3; ++k2) {
        v[3 * k1 + k2] = clebsch_gordan(one, MagneticLabel(2 - 2 * k1), one,
                                        MagneticLabel(2 - 2 * k2), two, MagneticLabel(tm));
      }
    }
    p += v * v.adjoint();
  }
  return p;
}

Matrix aklt_bond_hamiltonian() {
  const AngularMomentum s = angular_momentum(SpinLabel(2));
  const Matrix ss = kron(s.J1, s.J1) + kron(s.J2, s.J2) + kron(s.J3, s.J3);
  return ss + ss * ss / 3.0;
}

double spin2_bond_residual(const Vector& state, int length) {
  const std::size_t sites = static_cast<std::size_t>(std::pow(3, length));
  if (static_cast<std::size_t>(state.size()) != 4 * sites) {
    throw ShapeMismatch("state does not match an AKLT chain of " + std::to_string(length) +
                        " sites");
  }
  const Matrix p = spin2_projector();
  const double norm = state.norm();
  double worst = 0.0;
  for (int bond = 0; bond + 1 < length; ++bond) {
    // Axes: edge, sites, edge. Split as (outer, 9, inner).
    const std::size_t inner = 2 * static_cast<std::size_t>(std::pow(3, length - bond - 2));
    const std::size_t outer = state.size() / (9 * inner);
    Vector out = Vector::Zero(state.size());
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < inner; ++i) {
        Vector v(9);
        for (std::size_t k = 0; k < 9; ++k) v[k] = state[(o * 9 + k) * inner + i];
        const Vector w = p * v;
        for (std::size_t k = 0; k < 9; ++k) out[(o * 9 + k) * inner + i] = w[k];
      }
    }
    worst = std::max(worst, out.norm() / norm);
  }
  return worst;
}

double aklt_ground_check(const AKLTConfig& cfg) {
  const Tensor t = evaluate(aklt_chain(cfg));
  const Vector v = Eigen::Map<const Vector>(t.data().data(), static_cast<Eigen::Index>(t.size()));
  return spin2_bond_residual(v, cfg.length);
}

namespace {

void require_labels(const AKLTConfig& cfg) {
  cfg.validate();
  if (cfg.site_labels.empty()) throw ArityMismatch("amplitude query needs site labels");
}

}  // namespace

Complex aklt_config_amplitude(const AKLTConfig& cfg) {
  require_labels(cfg);
  const Vector l = cfg.left_edge.value_or(default_edge());
  const Vector r = cfg.right_edge.value_or(default_edge());
  std::vector<Diagram> effects = {matrix_box(l.adjoint(), {2}, {})};
  for (int m : cfg.site_labels) {
    effects.push_back(adjoint(magnetic_state(SpinLabel(2), MagneticLabel(2 * m))));
  }
  effects.push_back(matrix_box(r.adjoint(), {2}, {}));
  return evaluate_scalar(compose(aklt_chain(cfg), tensor(effects)));
}

Complex aklt_config_amplitude_oracle(const AKLTConfig& cfg) {
  require_labels(cfg);
  const auto m = aklt_mps_matrices();
  Matrix p = Matrix::Identity(2, 2);
  for (int k : cfg.site_labels) p = p * m[static_cast<std::size_t>(label_index(k))];
  const Vector l = cfg.left_edge.value_or(default_edge());
  const Vector r = cfg.right_edge.value_or(default_edge());
  // The diagram carries (3/2)^{N/2} relative to the MPS.
  return (l.adjoint() * p * r)(0, 0) * std::pow(1.5, cfg.length / 2.0);
}

// ---------------------------------------------------------------------------
// Ansatz.

int AnsatzSpec::gate_count() const {
  return static_cast<int>(brick_wall(n_qubits, layers).size());
}

void AnsatzSpec::validate() const {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw ValidationError("ansatz needs an even number of qubits, got " +
                          std::to_string(n_qubits));
  }
  if (layers < 1) throw ValidationError("ansatz needs at least one layer");
  if (n_qubits > 14) throw SizeExceeded("ansatz statevector on " + std::to_string(n_qubits) +
                                        " qubits");
  if (static_cast<int>(theta.size()) != gate_count()) {
    throw ArityMismatch("ansatz has " + std::to_string(gate_count()) + " gates but " +
                        std::to_string(theta.size()) + " parameters");
  }
}

std::vector<std::pair<int, int>> brick_wall(int n_qubits, int layers) {
  std::vector<std::pair<int, int>> out;
  for (int l = 0; l < layers; ++l) {
    for (int q = l % 2; q + 1 < n_qubits; q += 2) out.emplace_back(q, q + 1);
  }
  return out;
}

Matrix vertex_gate_matrix(double theta) { return evaluate_matrix(vertex_gate(theta)); }

namespace {

// Singlet projector P0 = (I - V(pi)) / 2, read off the gate diagram once.
const Matrix& singlet_projector() {
  static const Matrix p0 = (Matrix::Identity(4, 4) - vertex_gate_matrix(std::numbers::pi)) / 2.0;
  return p0;
}

// Applies a 4x4 gate to qubits (q, q+1) of an n-qubit state, qubit 0 most
// significant.
void apply_pair(Vector& psi, const Matrix& g, int q, int n) {
  const std::size_t low = std::size_t{1} << (n - q - 2);
  const std::size_t high = static_cast<std::size_t>(psi.size()) / (4 * low);
  for (std::size_t h = 0; h < high; ++h) {
    for (std::size_t l = 0; l < low; ++l) {
      Eigen::Matrix<Complex, 4, 1> v;
      for (std::size_t k = 0; k < 4; ++k) v[k] = psi[(h * 4 + k) * low + l];
      const Eigen::Matrix<Complex, 4, 1> w = g * v;
      for (std::size_t k = 0; k < 4; ++k) psi[(h * 4 + k) * low + l] = w[k];
    }
  }
}

Vector singlet_product(int n) {
  Vector psi = Vector::Ones(1);
  Vector s = Vector::Zero(4);
  s[1] = 1.0 / std::sqrt(2.0);
  s[2] = -1.0 / std::sqrt(2.0);
  for (int k = 0; k < n / 2; ++k) psi = kron(psi, s);
  return psi;
}

double expectation_unchecked(const AnsatzSpec& spec, const Matrix& s) {
  const auto gates = brick_wall(spec.n_qubits, spec.layers);
  const Matrix& p0 = singlet_projector();
  // phi = W^dagger psi with W = G_m ... G_1.
  Vector phi = singlet_product(spec.n_qubits);
  for (std::size_t g = gates.size(); g-- > 0;) {
    const Matrix vdag =
        Matrix::Identity(4, 4) + (std::exp(-kI * spec.theta[g]) - 1.0) * p0;
    apply_pair(phi, vdag, gates[g].first, spec.n_qubits);
  }
  return (phi.adjoint() * s * phi)(0, 0).real();
}

Matrix permutation_operator(const std::vector<int>& perm, int n) {
  check_permutation(perm, static_cast<std::size_t>(n));
  return permutation_unitary(perm, n);
}

}  // namespace

double qml_expectation(const AnsatzSpec& spec, const std::vector<int>& perm) {
  spec.validate();
  return expectation_unchecked(spec, permutation_operator(perm, spec.n_qubits));
}

double qml_gradient(const AnsatzSpec& spec, const std::vector<int>& perm, int index,
                    double step) {
  spec.validate();
  if (index < 0 || index >= spec.gate_count()) throw ValidationError("parameter index out of range");
  const Matrix s = permutation_operator(perm, spec.n_qubits);
  AnsatzSpec plus = spec;
  AnsatzSpec minus = spec;
  plus.theta[static_cast<std::size_t>(index)] += step;
  minus.theta[static_cast<std::size_t>(index)] -= step;
  return (expectation_unchecked(plus, s) - expectation_unchecked(minus, s)) / (2.0 * step);
}

double qml_gradient_shift(const AnsatzSpec& spec, const std::vector<int>& perm, int index) {
  // V(t) = e^{it/2} e^{it (P0 - 1/2)}; the phase cancels in W S W^dagger
  // and the generator has eigenvalues +-1/2.
  const double shift = std::numbers::pi / 2.0;
  spec.validate();
  if (index < 0 || index >= spec.gate_count()) throw ValidationError("parameter index out of range");
  const Matrix s = permutation_operator(perm, spec.n_qubits);
  AnsatzSpec plus = spec;
  AnsatzSpec minus = spec;
  plus.theta[static_cast<std::size_t>(index)] += shift;
  minus.theta[static_cast<std::size_t>(index)] -= shift;
  return (expectation_unchecked(plus, s) - expectation_unchecked(minus, s)) / 2.0;
}

VarianceEstimate qml_grad_variance(int n_qubits, int layers, const std::vector<int>& perm,
                                   int index, int n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw ValidationError("variance estimate needs at least 2 samples");
  AnsatzSpec spec{n_qubits, layers, {}};
  spec.theta.assign(static_cast<std::size_t>(spec.gate_count()), 0.0);
  spec.validate();
  const Matrix s = permutation_operator(perm, n_qubits);
  if (index < 0 || index >= spec.gate_count()) throw ValidationError("parameter index out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double step = 1e-5;
  std::vector<double> g(static_cast<std::size_t>(n_samples));
  for (auto& value : g) {
    for (auto& t : spec.theta) t = angle(rng);
    AnsatzSpec plus = spec;
    AnsatzSpec minus = spec;
    plus.theta[static_cast<std::size_t>(index)] += step;
    minus.theta[static_cast<std::size_t>(index)] -= step;
    value = (expectation_unchecked(plus, s) - expectation_unchecked(minus, s)) / (2.0 * step);
  }
  VarianceEstimate e;
  e.samples = n_samples;
  const double n = n_samples;
  e.mean = std::accumulate(g.begin(), g.end(), 0.0) / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : g) {
    const double d = x - e.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  e.variance = m2 / (n - 1.0);
  // Standard error of the sample variance from the fourth central moment.
  const double mu2 = m2 / n;
  const double mu4 = m4 / n;
  e.std_error = std::sqrt(std::max(0.0, (mu4 - (n - 3.0) / (n - 1.0) * mu2 * mu2) / n));
  return e;
}

// ---------------------------------------------------------------------------
// LQG.

void LQGConstants::validate() const {
  if (!(gamma > 0.0) || !(hbar_G_over_c3 > 0.0)) {
    throw ValidationError("LQG constants must be positive");
  }
}

Diagram lqg_vtilde2() {
  const std::vector<int> dims = qubits(3);
  const char paulis[3] = {'x', 'y', 'z'};
  std::vector<int> p = {0, 1, 2};
  std::vector<Diagram> consumers;
  do {
    const int inversions = (p[0] > p[1]) + (p[0] > p[2]) + (p[1] > p[2]);
    std::vector<Diagram> factors;
    for (int w = 0; w < 3; ++w) {
      const Diagram cp = consume_control(controlled_pauli(paulis[p[static_cast<std::size_t>(w)]]), {2});
      factors.push_back(on_wire(cp, w, dims));
    }
    const Complex sign = inversions % 2 == 0 ? 1.0 : -1.0;
    consumers.push_back(compose(tensor(z_spider(1, 1, 2, {sign}), identity_wires(dims)),
                                controlled_product(factors, dims)));
  } while (std::next_permutation(p.begin(), p.end()));
  const Diagram one = x_spider(0, 1, 2, 1);
  return scaled(compose(tensor(one, identity_wires(dims)), controlled_sum(consumers, dims)),
                kI / 8.0);
}

Matrix lqg_vtilde2_oracle() {
  Matrix s[3];
  s[0] = Matrix::Zero(2, 2);
  s[0](0, 1) = s[0](1, 0) = 1.0;
  s[1] = Matrix::Zero(2, 2);
  s[1](0, 1) = -kI;
  s[1](1, 0) = kI;
  s[2] = Matrix::Zero(2, 2);
  s[2](0, 0) = 1.0;
  s[2](1, 1) = -1.0;
  Matrix v = Matrix::Zero(8, 8);
  std::vector<int> p = {0, 1, 2};
  do {
    const int inversions = (p[0] > p[1]) + (p[0] > p[2]) + (p[1] > p[2]);
    v += (inversions % 2 == 0 ? 1.0 : -1.0) * kron(kron(s[p[0]], s[p[1]]), s[p[2]]);
  } while (std::next_permutation(p.begin(), p.end()));
  return v * (kI / 8.0);
}

Matrix lqg_intertwiner_matrix() {
  const Complex w1 = std::polar(1.0, std::numbers::pi / 3.0);
  const Complex w2 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 3) = m(3, 0) = 1.0;
  m(1, 1) = m(2, 2) = -w1;
  m(1, 2) = m(2, 1) = w2;
  return m * (kI / std::sqrt(3.0));
}

Vector lqg_intertwiner_state() {
  const Matrix m = lqg_intertwiner_matrix();
  Vector v(16);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) v[4 * a + b] = m(a, b);
  }
  return v;
}

EigenCheck lqg_min_volume_check(const EvalConfig& config) {
  const Diagram op = tensor(identity(2), lqg_vtilde2());
  const Matrix a = evaluate_matrix(op, config);
  const Vector psi = lqg_intertwiner_state();
  const Vector phi = a * psi;
  EigenCheck c;
  // Least-squares lambda minimising |phi - lambda psi|.
  c.eigenvalue = psi.dot(phi) / psi.squaredNorm();
  c.residual = (phi - c.eigenvalue * psi).norm() / psi.norm();
  c.phase_to_target = c.eigenvalue / (-std::sqrt(3.0) / 4.0);
  return c;
}

std::array<Complex, 2> lqg_intertwiner_components() {
  const auto half = CouplingNode::leaf(SpinLabel(1));
  std::array<Complex, 2> out;
  const Vector psi = lqg_intertwiner_state();
  for (int k = 0; k < 2; ++k) {
    const SpinLabel pair(2 * k);
    const CouplingTree tree{CouplingNode::couple(CouplingNode::couple(half, half, pair),
                                                 CouplingNode::couple(half, half, pair),
                                                 SpinLabel(0)),
                            MagneticLabel(0)};
    out[static_cast<std::size_t>(k)] = coupling_tree_state(tree).dot(psi);
  }
  return out;
}

double area_eigenvalue(SpinLabel j, const LQGConstants& constants) {
  constants.validate();
  const double prefactor =
      constants.unit_prefactor ? 1.0 : 8.0 * std::numbers::pi * constants.gamma * constants.hbar_G_over_c3;
  return prefactor * std::sqrt(j.value() * (j.value() + 1.0));
}

}  // namespace spinzx
