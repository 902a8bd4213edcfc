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

#ifndef SPINZX_SU2_HPP
#define SPINZX_SU2_HPP

#include <random>
#include <vector>

#include "spinzx/labels.hpp"
#include "spinzx/tensor.hpp"

namespace spinzx {

// Closed-form SU(2) quantities. Nothing here touches diagrams; these are
// the references that diagram constructions are checked against. Matrices
// use the magnetic ordering |j;j>, |j;j-1>, ..., |j;-j>.

struct SpinTriple {
  SpinLabel j1;
  SpinLabel j2;
  SpinLabel j3;
  bool admissible() const;
  // x_kl = j_k + j_l - j_m, the number of wires between bundles k and l.
  int x12() const { return (j1.twice() + j2.twice() - j3.twice()) / 2; }
  int x13() const { return (j1.twice() + j3.twice() - j2.twice()) / 2; }
  int x23() const { return (j2.twice() + j3.twice() - j1.twice()) / 2; }
};

double ln_factorial(int n);
bool triangle_ok(const SpinTriple& t);

// Wigner 3jm symbol. Zero when the triangle conditions fail or the
// magnetic numbers do not sum to zero. Throws InvalidMagnetic when an m is
// not valid for its spin.
double wigner_3jm(const SpinTriple& t, MagneticLabel m1, MagneticLabel m2,
                  MagneticLabel m3);

// <j1 m1; j2 m2 | j3 m3>.
double clebsch_gordan(SpinLabel j1, MagneticLabel m1, SpinLabel j2,
                      MagneticLabel m2, SpinLabel j3, MagneticLabel m3);

// Normalisation of the railroad 3j-state; throws InadmissibleTriple.
double normalisation_N(const SpinTriple& t);

// Caps on dense constructions. Exceeding them raises SizeExceeded.
struct OracleLimits {
  int max_qubits = 8;
  int max_twice_j = 16;
};

// (1/n!) sum over all qubit permutation unitaries.
Matrix symmetriser_dense(int n, const OracleLimits& limits = {});

// Qubit permutation moving tensor factor i to position perm[i], so that
// U(sigma o tau) = U(sigma) U(tau).
Matrix permutation_unitary(const std::vector<int>& perm, int n);
// Same convention for factors of arbitrary dimension.
Matrix permutation_unitary(const std::vector<int>& perm,
                           const std::vector<int>& dims);

struct AngularMomentum {
  Matrix J1;
  Matrix J2;
  Matrix J3;
  Matrix Jplus;
  Matrix Jminus;
};
AngularMomentum angular_momentum(SpinLabel j, const OracleLimits& limits = {});

// The spin-j irrep of u. Throws NotSU2 when u is not unitary with unit
// determinant to within `tolerance`.
Matrix wigner_D_oracle(SpinLabel j, const Matrix& u, double tolerance = 1e-9);
void check_su2(const Matrix& u, double tolerance = 1e-9);
// Haar-random element of SU(2).
Matrix random_su2(std::mt19937_64& rng);

// Binary coupling tree with spin labels on every node. Leaves have no
// children; internal nodes have exactly two.
struct CouplingNode {
  SpinLabel spin{1};
  std::vector<CouplingNode> children;

  static CouplingNode leaf(SpinLabel j) { return {j, {}}; }
  static CouplingNode couple(CouplingNode left, CouplingNode right,
                             SpinLabel j) {
    CouplingNode n{j, {}};
    n.children.push_back(std::move(left));
    n.children.push_back(std::move(right));
    return n;
  }
  bool is_leaf() const { return children.empty(); }
  std::vector<SpinLabel> leaves() const;
};

struct CouplingTree {
  CouplingNode root;
  MagneticLabel m{1};
  void validate() const;
};

// Normalized state in the product of the leaf spaces, built by recursive
// Clebsch-Gordan expansion.
Vector coupling_tree_state(const CouplingTree& tree);

// <bra| U_perm |ket> on normalized tree states with spin-1/2 leaves.
Complex pqc_amplitude_oracle(const CouplingTree& bra, const CouplingTree& ket,
                             const std::vector<int>& perm);

}  // namespace spinzx

#endif  // SPINZX_SU2_HPP
