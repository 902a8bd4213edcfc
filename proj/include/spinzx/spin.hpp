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

#ifndef SPINZX_SPIN_HPP
#define SPINZX_SPIN_HPP

#include <vector>

#include "spinzx/diagram.hpp"
#include "spinzx/su2.hpp"

namespace spinzx {

// Z spider parameter vectors. Each returns a_1..a_n; a_0 = 1 is implicit.
namespace params {
// a_k = 1 / sqrt(C(n, k)).
std::vector<Complex> sqrt_binom(int n);
// a_k = (-1)^k for k = 1..n.
std::vector<Complex> alt_sign(int n);
// a_k = (-1)^k C(x, k).
std::vector<Complex> alt_binom(int x);
// a_k = sqrt((k+1)(2j-k)) / sqrt(2j); a_{2j} = 0.
std::vector<Complex> ladder_L(SpinLabel j);
// a_k = (j-k)/j.
std::vector<Complex> diag_A(SpinLabel j);
}  // namespace params

// Group labels attached to composite sub-diagrams.
inline constexpr const char* kSymmetriserGroup = "sym";
inline constexpr const char* kSingletEffectGroup = "singlet_effect";
inline constexpr const char* kSingletStateGroup = "singlet_state";

// V_j: the wire of dim 2j+1 into 2j qubits, |k> -> the normalized sum of
// the bit strings with k ones.
Diagram embed_isometry(SpinLabel j);
// S_n = V V^dagger as one tagged group.
Diagram symmetriser(int n);
Diagram magnetic_state(SpinLabel j, MagneticLabel m);

// |k> -> (-1)^k |2j - k>.
Diagram wire_reverser(SpinLabel j);
// sqrt(2j+1) sum_m (-1)^{j+m+1} <j;m, j;-m|, and its adjoint.
Diagram spin_cup(SpinLabel j);
Diagram spin_cap(SpinLabel j);

// <01| - <10| on two qubits, and |01> - |10>.
Diagram singlet_effect();
Diagram singlet_state();

// Invariant state of H_j1 x H_j2 x H_j3 whose coefficients are the 3jm
// symbols. A spin-0 leg would be a dim-1 wire and is left out, so the
// state has one output per nonzero spin.
Diagram three_j_state(const SpinTriple& t);
// The same state built literally from singlets and symmetrisers.
Diagram three_j_state_railroad(const SpinTriple& t);
// H_j3 -> H_j1 x H_j2 with Clebsch-Gordan matrix entries. Needs j3 > 0.
Diagram injection(const SpinTriple& t);

// V^dagger u^{x 2j} V with u injected as an opaque box.
Diagram wigner_diagram(SpinLabel j, const Matrix& u);

enum class Ladder { kRaise, kLower };
Diagram ladder_diagram(SpinLabel j, Ladder direction);
Diagram j3_diagram(SpinLabel j);
Diagram j1_diagram(SpinLabel j);
Diagram j2_diagram(SpinLabel j);

// Controlled operators take (control, targets...) and return (targets...).
// With the control in |0> they act as the identity, with |1> as the
// operator.
Diagram controlled_J(int axis, SpinLabel j);

struct HamiltonianFactor {
  int axis = 3;
  int power = 1;
};
struct HamiltonianTerm {
  double coefficient = 1.0;
  // One factor per wire; an empty list means the identity on every wire.
  std::vector<HamiltonianFactor> factors;
};
// sum_r alpha_r (x)_i J_{axis_ri}^{power_ri} on wires of the given spins.
Diagram hamiltonian_diagram(const std::vector<SpinLabel>& spins,
                            const std::vector<HamiltonianTerm>& terms);

// Building blocks for the constructions above.
// (control, target) -> (control, target): |c,k> -> lambda_k^c |c,k>.
Diagram controlled_diagonal(const std::vector<Complex>& lambda);
// (control, target) -> (control, target): |c,k> -> |c, k - c*shift>.
Diagram controlled_shift(int shift, Dim dim);
// Removes a control that is passed through unchanged.
Diagram consume_control(const Diagram& passing, const std::vector<int>& target_dims);
// W fan-out: the control selects the sum of the consumers.
Diagram controlled_sum(const std::vector<Diagram>& consumers,
                       const std::vector<int>& target_dims);
// Z fan-out: the control selects the product, first consumer applied first.
Diagram controlled_product(const std::vector<Diagram>& consumers,
                           const std::vector<int>& target_dims);
// Lifts a consumer on one target wire to a consumer on all of them.
Diagram on_wire(const Diagram& consumer, int wire,
                const std::vector<int>& target_dims);

// Two-qubit gates.
Diagram controlled_pauli(char which);
Diagram controlled_hadamard();
Diagram y_rotation(double angle);
Diagram schur2();
Diagram p2(double theta);
Diagram vertex_gate(double theta);
Diagram dim_splitter(Dim d1, Dim d2);

// Binor calculus on qubit wires.
Diagram binor_cup();
Diagram binor_cap();
Diagram binor_cross();
// Signed average of binor permutation diagrams; equals the symmetriser.
DiagramSum binor_antisym(int n);
// Closes every strand of an n-strand operator with binor caps and cups.
Diagram binor_close(const Diagram& op);
DiagramSum binor_close(const DiagramSum& op);

}  // namespace spinzx

#endif  // SPINZX_SPIN_HPP
