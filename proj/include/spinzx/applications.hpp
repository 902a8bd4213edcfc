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

#ifndef SPINZX_APPLICATIONS_HPP
#define SPINZX_APPLICATIONS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "spinzx/diagram.hpp"
#include "spinzx/eval.hpp"
#include "spinzx/su2.hpp"

namespace spinzx {

// ---------------------------------------------------------------------------
// Permutational quantum computing.

// Unnormalised state of a coupling tree with spin-1/2 leaves, one qubit
// output per leaf. Each internal node splits its incoming qubits between
// its children, links the children with singlets and symmetrises each
// child bundle; the root is the embedded magnetic state.
Diagram coupling_tree_diagram(const CouplingTree& tree);

// Closed network <bra| U_perm |ket> on the unnormalised tree states, with
// U_perm moving qubit i to position perm[i].
Diagram pqc_network(const CouplingTree& bra, const CouplingTree& ket,
                    const std::vector<int>& perm);

enum class PqcMode { kDiagram, kOracle, kBoth };

struct PqcResult {
  // Normalised amplitude from the requested path; in both-mode the
  // diagram value.
  Complex amplitude;
  std::optional<Complex> diagram;
  std::optional<Complex> oracle;
  // Squared norms of the unnormalised tree states and the raw closed
  // network value (diagram path only).
  double bra_norm = 0.0;
  double ket_norm = 0.0;
  Complex raw;
  // Both-mode only: |diagram - oracle| <= tolerance.
  bool agree = true;
};

PqcResult pqc_amplitude(const CouplingTree& bra, const CouplingTree& ket,
                        const std::vector<int>& perm, PqcMode mode = PqcMode::kBoth,
                        const EvalConfig& config = {});

// The three-qubit instance: bra couples qubits 1 and 2 to spin 1, ket to
// spin 0, both reach total spin 1/2 with m = 1/2; the permutation swaps
// qubits 2 and 3.
CouplingTree pqc_example_bra();
CouplingTree pqc_example_ket();
std::vector<int> pqc_example_perm();

// ---------------------------------------------------------------------------
// AKLT chain.

struct AKLTConfig {
  int length = 2;
  // Optional magnetic numbers (+1, 0, -1) per site for amplitude queries.
  std::vector<int> site_labels;
  // Edge states contracted with the two boundary qubits in amplitude
  // queries. Both default to (|0> + |1>) / sqrt 2.
  std::optional<Vector> left_edge;
  std::optional<Vector> right_edge;
  void validate() const;
};

// Matrices M_{+1}, M_0, M_{-1} of the bond-dimension-2 MPS.
std::array<Matrix, 3> aklt_mps_matrices();

// State with outputs (left edge qubit, N spin-1 sites, right edge qubit):
// singlets between neighbouring sites, each site projected onto spin 1.
// A Z gate on the left edge and an X gate on the right edge put the edge
// qubits in the MPS bond basis.
Diagram aklt_chain(const AKLTConfig& cfg);
// Site map bond -> (site, bond) whose tensor is sqrt(3/2) M.
Diagram aklt_site();
// sum (M^{j1} ... M^{jN})_{ab} |a, j1..jN, b> in the same axis order.
Tensor aklt_mps_oracle(const AKLTConfig& cfg);

// Projector onto total spin 2 of two spin-1 sites, from CG coefficients.
Matrix spin2_projector();
// The two-site AKLT bond Hamiltonian S.S + (S.S)^2 / 3.
Matrix aklt_bond_hamiltonian();
// Max over bonds of |P2 psi| / |psi| for a state over (edge, N sites, edge).
double spin2_bond_residual(const Vector& state, int length);
// The same residual for the diagrammatic chain.
double aklt_ground_check(const AKLTConfig& cfg);
// Overlap of the chain with the product of site states |1;m_i>, edges
// contracted with the configured edge states.
Complex aklt_config_amplitude(const AKLTConfig& cfg);
Complex aklt_config_amplitude_oracle(const AKLTConfig& cfg);

// ---------------------------------------------------------------------------
// Equivariant ansatz.

struct AnsatzSpec {
  int n_qubits = 2;
  int layers = 1;
  std::vector<double> theta;
  // Gates in the tiling; theta must have this many entries.
  int gate_count() const;
  void validate() const;
};

// Qubit pairs of the brick-wall tiling in application order. Even layers
// cover (0,1), (2,3), ...; odd layers (1,2), (3,4), ...
std::vector<std::pair<int, int>> brick_wall(int n_qubits, int layers);

// Matrix of the vertex gate, taken from its diagram.
Matrix vertex_gate_matrix(double theta);

// Re <psi| W S W^dagger |psi> with psi a product of singlets on
// (0,1), (2,3), ... and S the permutation unitary.
double qml_expectation(const AnsatzSpec& spec, const std::vector<int>& perm);
// Central finite difference.
double qml_gradient(const AnsatzSpec& spec, const std::vector<int>& perm, int index,
                    double step = 1e-5);
// Exact two-point shift rule, for cross-checking.
double qml_gradient_shift(const AnsatzSpec& spec, const std::vector<int>& perm, int index);

struct VarianceEstimate {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  int samples = 0;
};
// Variance of d<H>/d theta_index over theta uniform in [0, 2 pi)^m.
VarianceEstimate qml_grad_variance(int n_qubits, int layers, const std::vector<int>& perm,
                                   int index, int n_samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Loop quantum gravity.

struct LQGConstants {
  double gamma = 1.0;
  double hbar_G_over_c3 = 1.0;
  // Drops the 8 pi gamma hbar G / c^3 prefactor altogether.
  bool unit_prefactor = false;
  void validate() const;
};

// (i/8) sum_{abc} eps_{abc} sigma_a x sigma_b x sigma_c as a diagram, and
// the same operator summed directly.
Diagram lqg_vtilde2();
Matrix lqg_vtilde2_oracle();

// The 4x4 matrix of the minimal-volume intertwiner, and the 4-qubit state
// sum_ab M_ab |a>|b> with a the first two qubits.
Matrix lqg_intertwiner_matrix();
Vector lqg_intertwiner_state();

struct EigenCheck {
  Complex eigenvalue;
  double residual = 0.0;
  // eigenvalue / target, where the target is -sqrt(3)/4.
  Complex phase_to_target;
};
EigenCheck lqg_min_volume_check(const EvalConfig& config = {});

// Components of the intertwiner state on the normalised
// ((12)->0, (34)->0) and ((12)->1, (34)->1) coupling-tree states.
std::array<Complex, 2> lqg_intertwiner_components();

double area_eigenvalue(SpinLabel j, const LQGConstants& constants = {});

}  // namespace spinzx

#endif  // SPINZX_APPLICATIONS_HPP
