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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "spinzx/eval.hpp"
#include "spinzx/spin.hpp"
#include "spinzx/su2.hpp"

namespace spinzx {
namespace {

constexpr double kTol = 1e-9;
const Complex kI(0.0, 1.0);

SpinLabel J(int twice) { return SpinLabel(twice); }
MagneticLabel M(int twice) { return MagneticLabel(twice); }

Matrix mat(const Diagram& d) { return evaluate_matrix(d); }

void expect_close(const Matrix& a, const Matrix& b, double tol = kTol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LT(max_abs_diff(a, b), tol) << "got\n" << a << "\nexpected\n" << b;
}

Matrix identity_matrix(int n) { return Matrix::Identity(n, n); }

std::vector<int> qubit_dims(int n) { return std::vector<int>(n, 2); }

// Oracle state sum_m 3jm(m1, m2, m3) |m1 m2 m3> over the nonzero spins.
Vector three_j_oracle(const SpinTriple& t) {
  std::vector<SpinLabel> spins;
  for (SpinLabel j : {t.j1, t.j2, t.j3}) {
    if (j.twice() > 0) spins.push_back(j);
  }
  int size = 1;
  for (SpinLabel j : spins) size *= j.dim();
  Vector v = Vector::Zero(size);
  for (int k1 = 0; k1 <= t.j1.twice(); ++k1) {
    for (int k2 = 0; k2 <= t.j2.twice(); ++k2) {
      for (int k3 = 0; k3 <= t.j3.twice(); ++k3) {
        int idx = 0;
        const int ks[3] = {k1, k2, k3};
        const SpinLabel js[3] = {t.j1, t.j2, t.j3};
        for (int i = 0; i < 3; ++i) {
          if (js[i].twice() > 0) idx = idx * js[i].dim() + ks[i];
        }
        v[idx] = wigner_3jm(t, magnetic_at(t.j1, k1), magnetic_at(t.j2, k2),
                            magnetic_at(t.j3, k3));
      }
    }
  }
  return v;
}

std::vector<SpinTriple> admissible_triples(int max_twice) {
  std::vector<SpinTriple> out;
  for (int a = 0; a <= max_twice; ++a) {
    for (int b = 0; b <= max_twice; ++b) {
      for (int c = 0; c <= max_twice; ++c) {
        SpinTriple t{J(a), J(b), J(c)};
        if (t.admissible() && a + b + c > 0) out.push_back(t);
      }
    }
  }
  return out;
}

TEST(ParamVectors, Values) {
  const auto s = params::sqrt_binom(2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1].real(), 1.0, 1e-15);
  const auto b = params::alt_binom(3);
  EXPECT_EQ(b, (std::vector<Complex>{-3.0, 3.0, -1.0}));
  EXPECT_EQ(params::alt_sign(3), (std::vector<Complex>{-1.0, 1.0, -1.0}));
  const auto l = params::ladder_L(J(2));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_NEAR(l[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(l[1].real(), 0.0, 1e-15);
  const auto a = params::diag_A(J(2));
  EXPECT_NEAR(a[0].real(), 0.0, 1e-15);
  EXPECT_NEAR(a[1].real(), -1.0, 1e-15);
}

TEST(EmbedIsometry, SpinHalfIsIdentity) {
  expect_close(mat(embed_isometry(J(1))), identity_matrix(2));
}

TEST(EmbedIsometry, SpinOneColumns) {
  Matrix expect = Matrix::Zero(4, 3);
  expect(0, 0) = 1;
  expect(1, 1) = expect(2, 1) = 1 / std::sqrt(2.0);
  expect(3, 2) = 1;
  expect_close(mat(embed_isometry(J(2))), expect);
}

TEST(EmbedIsometry, IsAnIsometry) {
  for (int n = 1; n <= 6; ++n) {
    const Matrix v = mat(embed_isometry(J(n)));
    expect_close(v.adjoint() * v, identity_matrix(n + 1));
  }
}

TEST(EmbedIsometry, RejectsSpinZero) {
  EXPECT_THROW(embed_isometry(J(0)), DimMismatch);
}

TEST(Symmetriser, MatchesDenseOracle) {
  for (int n = 1; n <= 6; ++n) {
    expect_close(mat(symmetriser(n)), symmetriser_dense(n));
  }
}

TEST(Symmetriser, SmallCases) {
  expect_close(mat(symmetriser(1)), identity_matrix(2));
  Matrix swap_m = permutation_unitary({1, 0}, 2);
  expect_close(mat(symmetriser(2)), (identity_matrix(4) + swap_m) / 2.0);
}

TEST(Symmetriser, TraceIsDimension) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_NEAR(mat(symmetriser(n)).trace().real(), n + 1, kTol);
  }
}

TEST(Symmetriser, IsTaggedGroup) {
  const Diagram s = symmetriser(3);
  ASSERT_EQ(s.groups().size(), 1u);
  const Group& g = s.groups().begin()->second;
  EXPECT_EQ(g.label, kSymmetriserGroup);
  EXPECT_EQ(g.size, 3);
  EXPECT_EQ(g.inputs.size(), 3u);
  EXPECT_EQ(g.outputs.size(), 3u);
}

TEST(SymmetriserSuite, IdempotentAndSelfAdjoint) {
  for (int n = 1; n <= 6; ++n) {
    const Diagram s = symmetriser(n);
    expect_close(mat(compose(s, s)), mat(s));
    expect_close(mat(adjoint(s)), mat(s));
  }
}

TEST(SymmetriserSuite, CommutesWithUnitaries) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    const Diagram s = symmetriser(n);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix u = random_su2(rng) * std::exp(kI * (0.3 * trial));
      const Diagram lift = tensor_power(matrix_box(u, {2}, {2}), n);
      expect_close(mat(compose(lift, s)), mat(compose(s, lift)));
    }
  }
}

TEST(SymmetriserSuite, Stacking) {
  for (int n = 2; n <= 6; ++n) {
    const Diagram s = symmetriser(n);
    for (int k = 1; k <= n; ++k) {
      for (int offset = 0; offset + k <= n; ++offset) {
        const Diagram inner = tensor({identity_wires(qubit_dims(offset)), symmetriser(k),
                                      identity_wires(qubit_dims(n - k - offset))});
        expect_close(mat(compose(inner, s)), mat(s));
        expect_close(mat(compose(s, inner)), mat(s));
      }
    }
  }
}

TEST(SymmetriserSuite, CappingGivesZero) {
  for (int n = 2; n <= 6; ++n) {
    const Diagram s = symmetriser(n);
    for (int i = 0; i + 1 < n; ++i) {
      const Diagram capped = compose(
          s, tensor({identity_wires(qubit_dims(i)), singlet_effect(),
                     identity_wires(qubit_dims(n - i - 2))}));
      EXPECT_LT(mat(capped).cwiseAbs().maxCoeff(), kTol);
    }
    // Non-adjacent legs through a permutation.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::swap(perm[1], perm[n - 1]);
    const Diagram capped =
        compose({s, permutation(qubit_dims(n), perm),
                 tensor(singlet_effect(), identity_wires(qubit_dims(n - 2)))});
    EXPECT_LT(mat(capped).cwiseAbs().maxCoeff(), kTol);
  }
}

TEST(SymmetriserSuite, SelfTranspose) {
  for (int n = 1; n <= 6; ++n) {
    const Matrix s = mat(symmetriser(n));
    expect_close(s.transpose(), s);
  }
  // Bending every leg of S_2 with cups and caps gives S_2 again.
  const Diagram s = symmetriser(2);
  const Diagram bent = compose({tensor({cup(2), cup(2), identity_wires({2, 2})}),
                                permutation(qubit_dims(6), {0, 2, 1, 3, 4, 5}),
                                tensor({identity_wires({2, 2}), s, identity_wires({2, 2})}),
                                permutation(qubit_dims(6), {0, 1, 2, 4, 3, 5}),
                                tensor({identity_wires({2, 2}), cap(2), cap(2)})});
  expect_close(mat(bent), mat(s));
}

Diagram trace_last(const Diagram& d) {
  const int n = d.n_inputs();
  return compose({tensor(identity_wires(qubit_dims(n - 1)), cup(2)), tensor(d, identity(2)),
                  tensor(identity_wires(qubit_dims(n - 1)), cap(2))});
}

TEST(SymmetriserSuite, LoopingConstants) {
  // Measured from symmetriser_dense, then frozen.
  const std::map<int, double> frozen = {
      {2, 1.5}, {3, 4.0 / 3.0}, {4, 1.25}, {5, 1.2}, {6, 7.0 / 6.0}};
  for (const auto& [n, c] : frozen) {
    const Matrix traced = mat(trace_last(symmetriser(n)));
    const Matrix smaller = symmetriser_dense(n - 1);
    expect_close(traced, c * smaller);
    const Matrix dense = symmetriser_dense(n);
    const int half = static_cast<int>(dense.rows() / 2);
    Matrix partial(half, half);
    for (int r = 0; r < half; ++r) {
      for (int col = 0; col < half; ++col) {
        partial(r, col) = dense(2 * r, 2 * col) + dense(2 * r + 1, 2 * col + 1);
      }
    }
    expect_close(partial, c * smaller);
  }
}

TEST(MagneticState, BasisVectors) {
  Vector e0 = Vector::Zero(2);
  e0[0] = 1;
  expect_close(mat(magnetic_state(J(1), M(1))), e0);
  Vector e1 = Vector::Zero(3);
  e1[1] = 1;
  expect_close(mat(magnetic_state(J(2), M(0))), e1);
  Vector sym = Vector::Zero(4);
  sym[1] = sym[2] = 1 / std::sqrt(2.0);
  expect_close(mat(compose(magnetic_state(J(2), M(0)), embed_isometry(J(2)))), sym);
  EXPECT_THROW(magnetic_state(J(2), M(1)), InvalidMagnetic);
  EXPECT_THROW(magnetic_state(J(2), M(4)), InvalidMagnetic);
}

TEST(SpinCup, SpinHalfValue) {
  Matrix expect = Matrix::Zero(1, 4);
  expect(0, 1) = std::sqrt(2.0);
  expect(0, 2) = -std::sqrt(2.0);
  expect_close(mat(spin_cup(J(1))), expect);
}

TEST(SpinCup, MatchesTableFormula) {
  for (int tj = 1; tj <= 4; ++tj) {
    const SpinLabel j = J(tj);
    const Matrix cup_m = mat(spin_cup(j));
    Matrix expect = Matrix::Zero(1, j.dim() * j.dim());
    for (int k = 0; k <= tj; ++k) {
      const int m2 = j.twice() - 2 * k;  // 2m
      const int partner = basis_index(j, M(-m2));
      const int exponent = (tj + m2) / 2 + 1;
      expect(0, k * j.dim() + partner) =
          (exponent % 2 == 0 ? 1.0 : -1.0) * std::sqrt(static_cast<double>(j.dim()));
    }
    expect_close(cup_m, expect);
    expect_close(mat(spin_cap(j)), expect.adjoint());
  }
}

TEST(SpinCup, Invariant) {
  std::mt19937_64 rng(11);
  for (int tj = 1; tj <= 3; ++tj) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix u = random_su2(rng);
      const Matrix d = wigner_D_oracle(J(tj), u);
      const Diagram lift = tensor(matrix_box(d, {tj + 1}, {tj + 1}),
                                  matrix_box(d, {tj + 1}, {tj + 1}));
      expect_close(mat(compose(lift, spin_cup(J(tj)))), mat(spin_cup(J(tj))));
    }
  }
}

TEST(SpinCup, SnakeScalars) {
  // (I x cup) o (cap x I) is a multiple of the identity; the multiple is
  // (-1)^{2j} (2j+1), measured and frozen.
  for (int tj = 1; tj <= 4; ++tj) {
    const SpinLabel j = J(tj);
    const int d = j.dim();
    const Diagram snake = compose(tensor(spin_cap(j), identity(d)),
                                  tensor(identity(d), spin_cup(j)));
    const double expected = (tj % 2 == 0 ? 1.0 : -1.0) * d;
    expect_close(mat(snake), expected * identity_matrix(d));
  }
}

TEST(WireReverser, Action) {
  const Matrix r = mat(wire_reverser(J(2)));
  Matrix expect = Matrix::Zero(3, 3);
  expect(2, 0) = 1;
  expect(1, 1) = -1;
  expect(0, 2) = 1;
  expect_close(r, expect);
}

TEST(Singlet, Values) {
  Matrix expect = Matrix::Zero(1, 4);
  expect(0, 1) = 1;
  expect(0, 2) = -1;
  expect_close(mat(singlet_effect()), expect);
  expect_close(mat(singlet_state()), expect.adjoint());
  EXPECT_EQ(singlet_effect().groups().begin()->second.label, kSingletEffectGroup);
  EXPECT_EQ(singlet_state().groups().begin()->second.label, kSingletStateGroup);
}

TEST(ThreeJ, MatchesOracleEntrywise) {
  for (const SpinTriple& t : admissible_triples(3)) {
    const Matrix got = mat(three_j_state(t));
    expect_close(got, three_j_oracle(t));
  }
}

TEST(ThreeJ, LargerSpinsMatchOracle) {
  for (const SpinTriple& t : {SpinTriple{J(4), J(3), J(3)}, SpinTriple{J(4), J(4), J(4)},
                              SpinTriple{J(5), J(4), J(3)}, SpinTriple{J(6), J(2), J(4)}}) {
    expect_close(mat(three_j_state(t)), three_j_oracle(t));
  }
}

TEST(ThreeJ, RailroadFormAgrees) {
  for (const SpinTriple& t : admissible_triples(3)) {
    expect_close(mat(three_j_state_railroad(t)), mat(three_j_state(t)));
  }
}

TEST(ThreeJ, SpinHalfPair) {
  const Matrix v = mat(three_j_state({J(1), J(1), J(0)}));
  ASSERT_EQ(v.rows(), 4);
  EXPECT_NEAR(std::abs(v(0, 0)), 0.0, kTol);
  EXPECT_NEAR(v(1, 0).real(), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(v(2, 0).real(), -1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(std::abs(v(3, 0)), 0.0, kTol);
}

TEST(ThreeJ, UnitNormAndInvariant) {
  std::mt19937_64 rng(5);
  for (const SpinTriple& t : admissible_triples(3)) {
    const Vector v = mat(three_j_state(t));
    EXPECT_NEAR(v.norm(), 1.0, kTol);
    const Matrix u = random_su2(rng);
    Matrix lift = Matrix::Identity(1, 1);
    for (SpinLabel j : {t.j1, t.j2, t.j3}) {
      if (j.twice() > 0) lift = kron(lift, wigner_D_oracle(j, u));
    }
    expect_close(lift * v, v);
  }
}

TEST(ThreeJ, Inadmissible) {
  EXPECT_THROW(three_j_state({J(1), J(1), J(4)}), InadmissibleTriple);
  EXPECT_THROW(three_j_state({J(1), J(1), J(1)}), InadmissibleTriple);
}

TEST(ThreeJ, PermutationSymmetries) {
  for (const SpinTriple& t : admissible_triples(3)) {
    if (t.j1.twice() == 0 || t.j2.twice() == 0 || t.j3.twice() == 0) continue;
    const std::vector<int> dims = {t.j1.dim(), t.j2.dim(), t.j3.dim()};
    const int total = (t.j1.twice() + t.j2.twice() + t.j3.twice()) / 2;
    const double odd_phase = total % 2 == 0 ? 1.0 : -1.0;
    // Cyclic permutation: wires (2, 3, 1) carry spins of t'.
    const SpinTriple cyc{t.j2, t.j3, t.j1};
    const Diagram moved = compose(three_j_state(t), permutation(dims, {1, 2, 0}));
    expect_close(mat(moved), mat(three_j_state(cyc)));
    // Odd permutation (swap of the first two).
    const SpinTriple swapped{t.j2, t.j1, t.j3};
    const Diagram sw = compose(three_j_state(t), permutation(dims, {1, 0, 2}));
    expect_close(mat(sw), odd_phase * mat(three_j_state(swapped)));
    // Negating every m through the wire reverser.
    const Diagram rev =
        compose(three_j_state(t), tensor({wire_reverser(t.j1), wire_reverser(t.j2),
                                          wire_reverser(t.j3)}));
    // R carries (-1)^k on each wire, sum of k = total - 0 since sum m = 0.
    const double rev_phase = odd_phase * (total % 2 == 0 ? 1.0 : -1.0);
    expect_close(mat(rev), rev_phase * mat(three_j_state(t)));
  }
}

TEST(Injection, MatchesClebschGordan) {
  for (const SpinTriple& t : admissible_triples(3)) {
    if (t.j3.twice() == 0) continue;
    const Matrix m = mat(injection(t));
    std::vector<std::pair<SpinLabel, int>> outs;
    for (SpinLabel j : {t.j1, t.j2}) {
      if (j.twice() > 0) outs.push_back({j, 0});
    }
    for (int k3 = 0; k3 <= t.j3.twice(); ++k3) {
      for (int k1 = 0; k1 <= t.j1.twice(); ++k1) {
        for (int k2 = 0; k2 <= t.j2.twice(); ++k2) {
          int row = 0;
          if (t.j1.twice() > 0) row = k1;
          if (t.j2.twice() > 0) row = row * t.j2.dim() + k2;
          const double cg = clebsch_gordan(t.j1, magnetic_at(t.j1, k1), t.j2,
                                           magnetic_at(t.j2, k2), t.j3, magnetic_at(t.j3, k3));
          EXPECT_NEAR(std::abs(m(row, k3) - cg), 0.0, kTol)
              << t.j1.str() << " " << t.j2.str() << " " << t.j3.str();
        }
      }
    }
    expect_close(m.adjoint() * m, identity_matrix(t.j3.dim()));
  }
}

TEST(Injection, TripletTop) {
  const Matrix m = mat(injection({J(1), J(1), J(2)}));
  EXPECT_NEAR(m(0, 0).real(), 1.0, kTol);
  EXPECT_NEAR(m.col(0).norm(), 1.0, kTol);
}

TEST(Wigner, SpinHalfAndIdentity) {
  std::mt19937_64 rng(3);
  const Matrix u = random_su2(rng);
  expect_close(mat(wigner_diagram(J(1), u)), u);
  expect_close(mat(wigner_diagram(J(3), identity_matrix(2))), identity_matrix(4));
}

TEST(Wigner, DiagonalSpinOne) {
  const double phi = 0.7;
  Matrix u = Matrix::Zero(2, 2);
  u(0, 0) = std::exp(kI * (phi / 2));
  u(1, 1) = std::exp(-kI * (phi / 2));
  Matrix expect = Matrix::Zero(3, 3);
  expect(0, 0) = std::exp(kI * phi);
  expect(1, 1) = 1;
  expect(2, 2) = std::exp(-kI * phi);
  expect_close(mat(wigner_diagram(J(2), u)), expect);
}

TEST(Wigner, MatchesOracleHomomorphismUnitary) {
  std::mt19937_64 rng(17);
  for (int tj = 1; tj <= 4; ++tj) {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix u = random_su2(rng);
      const Matrix v = random_su2(rng);
      const Matrix du = mat(wigner_diagram(J(tj), u));
      const Matrix dv = mat(wigner_diagram(J(tj), v));
      expect_close(du, wigner_D_oracle(J(tj), u));
      expect_close(mat(wigner_diagram(J(tj), u * v)), du * dv);
      expect_close(du.adjoint() * du, identity_matrix(tj + 1));
    }
  }
}

TEST(AngularMomentum, LadderSpinHalf) {
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 1) = 1;
  expect_close(mat(ladder_diagram(J(1), Ladder::kRaise)), expect);
  expect_close(mat(ladder_diagram(J(1), Ladder::kLower)), expect.transpose());
}

TEST(AngularMomentum, MatchOracle) {
  for (int tj = 1; tj <= 6; ++tj) {
    const AngularMomentum am = angular_momentum(J(tj));
    expect_close(mat(ladder_diagram(J(tj), Ladder::kRaise)), am.Jplus);
    expect_close(mat(ladder_diagram(J(tj), Ladder::kLower)), am.Jminus);
    expect_close(mat(j3_diagram(J(tj))), am.J3);
    expect_close(mat(j1_diagram(J(tj))), am.J1);
    expect_close(mat(j2_diagram(J(tj))), am.J2);
  }
  Matrix diag3 = Matrix::Zero(3, 3);
  diag3(0, 0) = 1;
  diag3(2, 2) = -1;
  expect_close(mat(j3_diagram(J(2))), diag3);
}

TEST(AngularMomentum, CommutatorDiagramsVanish) {
  for (int tj = 1; tj <= 6; ++tj) {
    const Diagram jp = ladder_diagram(J(tj), Ladder::kRaise);
    const Diagram jm = ladder_diagram(J(tj), Ladder::kLower);
    const Diagram j3 = j3_diagram(J(tj));
    DiagramSum pm;
    pm.add(1.0, compose(jm, jp));
    pm.add(-1.0, compose(jp, jm));
    pm.add(-2.0, j3);
    EXPECT_LT(evaluate_matrix(pm).cwiseAbs().maxCoeff(), kTol);
    for (const auto& [ladder, sign] : {std::pair{jp, 1.0}, std::pair{jm, -1.0}}) {
      DiagramSum c;
      c.add(1.0, compose(ladder, j3));
      c.add(-1.0, compose(j3, ladder));
      c.add(-sign, ladder);
      EXPECT_LT(evaluate_matrix(c).cwiseAbs().maxCoeff(), kTol);
    }
  }
}

// Evaluate a consumer with its control fixed to |c>.
Matrix with_control(const Diagram& consumer, int c, const std::vector<int>& dims) {
  return mat(compose(tensor(x_spider(0, 1, 2, -c), identity_wires(dims)), consumer));
}

TEST(ControlledJ, ControlSelectsOperator) {
  for (int tj = 1; tj <= 3; ++tj) {
    const AngularMomentum am = angular_momentum(J(tj));
    const Matrix ops[3] = {am.J1, am.J2, am.J3};
    for (int axis = 1; axis <= 3; ++axis) {
      const Diagram c = controlled_J(axis, J(tj));
      EXPECT_EQ(c.n_inputs(), 2);
      EXPECT_EQ(c.n_outputs(), 1);
      expect_close(with_control(c, 0, {tj + 1}), identity_matrix(tj + 1));
      expect_close(with_control(c, 1, {tj + 1}), ops[axis - 1]);
    }
  }
}

TEST(ControlledJ, BuildingBlocks) {
  const Matrix d = mat(controlled_diagonal({2.0, 3.0, 5.0}));
  Matrix expect = Matrix::Identity(6, 6);
  expect(3, 3) = 2;
  expect(4, 4) = 3;
  expect(5, 5) = 5;
  expect_close(d, expect);
  const Matrix s = mat(controlled_shift(1, 3));
  Matrix shift = Matrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) {
    shift(k, k) = 1;
    shift(3 + (k + 2) % 3, 3 + k) = 1;
  }
  expect_close(s, shift);
}

TEST(Hamiltonian, SingleZTerm) {
  const Diagram h = hamiltonian_diagram({J(1)}, {{1.0, {{3, 1}}}});
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 0.5;
  expect(1, 1) = -0.5;
  expect_close(mat(h), expect);
}

TEST(Hamiltonian, HeisenbergPair) {
  std::vector<HamiltonianTerm> terms;
  for (int axis = 1; axis <= 3; ++axis) terms.push_back({1.0, {{axis, 1}, {axis, 1}}});
  const Diagram h = hamiltonian_diagram({J(1), J(1)}, terms);
  const Matrix swap_m = permutation_unitary({1, 0}, 2);
  expect_close(mat(h), (swap_m - identity_matrix(4) / 2.0) / 2.0);
}

TEST(Hamiltonian, MixedSpinsPowersAndIdentity) {
  const std::vector<SpinLabel> spins = {J(1), J(2)};
  const std::vector<HamiltonianTerm> terms = {
      {0.7, {{1, 2}, {3, 1}}}, {-1.3, {{0, 0}, {2, 3}}}, {0.25, {}}};
  const AngularMomentum a = angular_momentum(J(1));
  const AngularMomentum b = angular_momentum(J(2));
  const Matrix expect = 0.7 * kron(a.J1 * a.J1, b.J3) +
                        -1.3 * kron(identity_matrix(2), b.J2 * b.J2 * b.J2) +
                        0.25 * identity_matrix(6);
  expect_close(mat(hamiltonian_diagram(spins, terms)), expect);
}

TEST(Hamiltonian, ZeroAndErrors) {
  expect_close(mat(hamiltonian_diagram({J(1)}, {{0.0, {{1, 1}}}})), Matrix::Zero(2, 2));
  EXPECT_THROW(hamiltonian_diagram({J(1)}, {}), EmptyHamiltonian);
  EXPECT_THROW(hamiltonian_diagram({J(1)}, {{1.0, {{1, 1}, {1, 1}}}}), ArityMismatch);
}

TEST(TwoQubitGates, ControlledPaulis) {
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  expect_close(mat(controlled_pauli('x')), cnot);
  Matrix cz = Matrix::Identity(4, 4);
  cz(3, 3) = -1;
  expect_close(mat(controlled_pauli('z')), cz);
  Matrix cy = Matrix::Zero(4, 4);
  cy(0, 0) = cy(1, 1) = 1;
  cy(2, 3) = -kI;
  cy(3, 2) = kI;
  expect_close(mat(controlled_pauli('y')), cy);
  EXPECT_THROW(controlled_pauli('q'), ValidationError);
}

TEST(TwoQubitGates, ControlledHadamard) {
  Matrix ch = Matrix::Identity(4, 4);
  const double r = 1 / std::sqrt(2.0);
  ch(2, 2) = r;
  ch(2, 3) = r;
  ch(3, 2) = r;
  ch(3, 3) = -r;
  expect_close(mat(controlled_hadamard()), ch);
}

TEST(TwoQubitGates, SchurSlots) {
  const Matrix s = mat(schur2());
  const double r = 1 / std::sqrt(2.0);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 1;           // |1;1>
  expect(1, 1) = r;           // |1;0>
  expect(2, 1) = r;
  expect(3, 2) = 1;           // |1;-1>
  expect(1, 3) = r;           // |0;0>
  expect(2, 3) = -r;
  expect_close(s, expect);
  expect_close(s.adjoint() * s, identity_matrix(4));
  // Columns agree with the Clebsch-Gordan injections.
  const Matrix triplet = mat(injection({J(1), J(1), J(2)}));
  const Matrix singlet = mat(three_j_state({J(1), J(1), J(0)}));
  expect_close(s.leftCols(3), triplet);
  expect_close(s.col(3), singlet);
}

TEST(TwoQubitGates, VertexGate) {
  expect_close(mat(vertex_gate(0.0)), identity_matrix(4));
  const double theta = 1.1;
  const Matrix v = mat(vertex_gate(theta));
  const Matrix triplet = mat(injection({J(1), J(1), J(2)}));
  const Vector singlet = mat(three_j_state({J(1), J(1), J(0)}));
  const Matrix expect = triplet * triplet.adjoint() +
                        std::exp(kI * theta) * singlet * singlet.adjoint();
  expect_close(v, expect);
  expect_close(v * singlet, std::exp(kI * theta) * singlet);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = random_su2(rng);
    const Matrix uu = kron(u, u);
    expect_close(v * uu, uu * v);
  }
  Matrix p = Matrix::Identity(4, 4);
  p(3, 3) = std::exp(kI * theta);
  expect_close(mat(p2(theta)), p);
}

TEST(DimSplitter, Reindexing) {
  Vector three = Vector::Zero(4);
  three[3] = 1;
  const Matrix out = mat(dim_splitter(2, 2)) * three;
  EXPECT_NEAR(std::abs(out(3, 0) - 1.0), 0.0, kTol);
  expect_close(mat(compose(dim_splitter(2, 3), adjoint(dim_splitter(2, 3)))),
               identity_matrix(6));
}

TEST(Binor, LoopAndSkein) {
  EXPECT_NEAR(std::abs(evaluate_scalar(compose(binor_cap(), binor_cup())) - Complex(-2.0)),
              0.0, kTol);
  DiagramSum skein;
  skein.add(1.0, identity_wires({2, 2}));
  skein.add(1.0, binor_cross());
  skein.add(1.0, compose(binor_cup(), binor_cap()));
  EXPECT_LT(evaluate_matrix(skein).cwiseAbs().maxCoeff(), kTol);
}

TEST(Binor, AntisymIsSymmetriser) {
  for (int n = 1; n <= 4; ++n) {
    expect_close(evaluate_matrix(binor_antisym(n)), symmetriser_dense(n));
  }
}

TEST(Binor, TracedAntisymmetriser) {
  for (int n = 1; n <= 3; ++n) {
    const Matrix closed = evaluate_matrix(binor_close(binor_antisym(n)));
    const double expected = (n % 2 == 0 ? 1.0 : -1.0) * (n + 1);
    EXPECT_NEAR(std::abs(closed(0, 0) - expected), 0.0, kTol);
  }
}

}  // namespace
}  // namespace spinzx
