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
#include <numbers>
#include <random>

#include "spinzx/applications.hpp"
#include "spinzx/errors.hpp"
#include "spinzx/rewrite.hpp"
#include "spinzx/spin.hpp"

namespace spinzx {
namespace {

constexpr double kTol = 1e-9;
const CouplingNode kHalf = CouplingNode::leaf(SpinLabel(1));

CouplingNode couple(CouplingNode a, CouplingNode b, int twice) {
  return CouplingNode::couple(std::move(a), std::move(b), SpinLabel(twice));
}

Vector flat(const Tensor& t) {
  return Eigen::Map<const Vector>(t.data().data(), static_cast<Eigen::Index>(t.size()));
}

// --- PQC -------------------------------------------------------------------

TEST(Pqc, ExampleAmplitudeIsRootThreeOverTwo) {
  const PqcResult r = pqc_amplitude(pqc_example_bra(), pqc_example_ket(), pqc_example_perm());
  ASSERT_TRUE(r.diagram && r.oracle);
  EXPECT_NEAR(std::abs(*r.diagram - std::sqrt(3.0) / 2.0), 0.0, kTol);
  EXPECT_NEAR(std::abs(*r.oracle - std::sqrt(3.0) / 2.0), 0.0, kTol);
  EXPECT_TRUE(r.agree);
}

TEST(Pqc, DiagrammaticNormsAreThreeHalvesAndTwo) {
  const PqcResult r = pqc_amplitude(pqc_example_bra(), pqc_example_ket(), pqc_example_perm(),
                                    PqcMode::kDiagram);
  EXPECT_NEAR(r.bra_norm, 1.5, kTol);
  EXPECT_NEAR(r.ket_norm, 2.0, kTol);
  // The closed network scaled by 1/sqrt(3) is the amplitude.
  EXPECT_NEAR(std::abs(r.raw / std::sqrt(3.0) - std::sqrt(3.0) / 2.0), 0.0, kTol);
  EXPECT_FALSE(r.oracle.has_value());
}

TEST(Pqc, SameTreeIdentityPermutationIsOne) {
  for (const auto& t : {pqc_example_bra(), pqc_example_ket()}) {
    const PqcResult r = pqc_amplitude(t, t, {0, 1, 2});
    EXPECT_NEAR(std::abs(*r.diagram - 1.0), 0.0, kTol);
    EXPECT_TRUE(r.agree);
  }
}

TEST(Pqc, DiagramTreeStateMatchesOracleUpToNorm) {
  const std::vector<CouplingTree> trees = {
      {couple(couple(kHalf, kHalf, 2), kHalf, 3), MagneticLabel(-1)},
      {couple(couple(kHalf, kHalf, 2), couple(kHalf, kHalf, 2), 2), MagneticLabel(0)},
      {couple(couple(kHalf, kHalf, 0), couple(kHalf, kHalf, 2), 2), MagneticLabel(2)},
      {couple(kHalf, couple(kHalf, couple(kHalf, kHalf, 2), 1), 2), MagneticLabel(-2)},
      {couple(couple(couple(kHalf, kHalf, 2), kHalf, 3), kHalf, 4), MagneticLabel(0)},
  };
  for (const auto& t : trees) {
    const Vector d = evaluate_matrix(coupling_tree_diagram(t)).col(0);
    const Vector o = coupling_tree_state(t);
    EXPECT_LT((d / d.norm() - o).lpNorm<Eigen::Infinity>(), kTol);
  }
}

TEST(Pqc, AllFourQubitAmplitudesAgree) {
  std::vector<CouplingTree> trees;
  for (int a : {0, 2}) {
    for (int b : {0, 2}) {
      for (int total = 0; total <= 4; total += 2) {
        const CouplingTree t{couple(couple(kHalf, kHalf, a), couple(kHalf, kHalf, b), total),
                             MagneticLabel(0)};
        if (SpinTriple{SpinLabel(a), SpinLabel(b), SpinLabel(total)}.admissible()) trees.push_back(t);
      }
    }
    for (int mid = a - 1; mid <= a + 1; mid += 2) {
      if (mid < 1) continue;
      for (int total = mid - 1; total <= mid + 1; total += 2) {
        trees.push_back({couple(couple(couple(kHalf, kHalf, a), kHalf, mid), kHalf, total),
                         MagneticLabel(0)});
      }
    }
  }
  std::vector<int> perm = {0, 1, 2, 3};
  int checked = 0;
  do {
    for (const auto& bra : trees) {
      for (const auto& ket : trees) {
        const PqcResult r = pqc_amplitude(bra, ket, perm);
        EXPECT_TRUE(r.agree) << *r.diagram << " vs " << *r.oracle;
        ++checked;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_GT(checked, 500);
}

TEST(Pqc, RelabelingSymmetry) {
  // Exchanging qubits 0 and 1 fixes the spin-1 pair and negates the
  // singlet, so conjugating the permutation by the exchange flips the sign.
  const CouplingTree bra = pqc_example_bra();
  const CouplingTree ket = pqc_example_ket();
  const std::vector<int> tau = {1, 0, 2};
  std::vector<int> sigma = {0, 1, 2};
  do {
    std::vector<int> conj(3);
    for (int i = 0; i < 3; ++i) conj[i] = tau[sigma[tau[i]]];
    const Complex a = pqc_amplitude(bra, ket, sigma, PqcMode::kDiagram).amplitude;
    const Complex b = pqc_amplitude(bra, ket, conj, PqcMode::kDiagram).amplitude;
    EXPECT_NEAR(std::abs(a + b), 0.0, kTol);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST(Pqc, Errors) {
  const CouplingTree four{couple(couple(kHalf, kHalf, 2), couple(kHalf, kHalf, 2), 0),
                          MagneticLabel(0)};
  EXPECT_THROW(pqc_amplitude(pqc_example_bra(), four, {0, 1, 2}), LeafCountMismatch);
  const CouplingTree spin_one_leaf{couple(CouplingNode::leaf(SpinLabel(2)), kHalf, 1),
                                   MagneticLabel(1)};
  EXPECT_THROW(coupling_tree_diagram(spin_one_leaf), InadmissibleTree);
  EXPECT_THROW(pqc_network(pqc_example_bra(), pqc_example_ket(), {0, 0, 1}), InvalidPermutation);
}

TEST(Pqc, FullSimplificationReachesTheScalar) {
  const Diagram closed = scaled(pqc_network(pqc_example_bra(), pqc_example_ket(), pqc_example_perm()),
                                1.0 / std::sqrt(3.0));
  const SimplifyResult r = simplify(closed, Strategy::kFull);
  EXPECT_TRUE(r.diagram.nodes().empty());
  EXPECT_NEAR(std::abs(r.diagram.scalar() - evaluate_scalar(closed)), 0.0, kTol);
  EXPECT_NEAR(std::abs(r.diagram.scalar() - std::sqrt(3.0) / 2.0), 0.0, kTol);
}

// --- AKLT ------------------------------------------------------------------

TEST(Aklt, ChainMatchesMpsOracle) {
  for (int n = 2; n <= 6; ++n) {
    const AKLTConfig cfg{n};
    const Vector d = flat(evaluate(aklt_chain(cfg)));
    const Vector o = flat(aklt_mps_oracle(cfg));
    ASSERT_EQ(d.size(), o.size());
    const auto ratio = proportional(evaluate(aklt_chain(cfg)), aklt_mps_oracle(cfg));
    ASSERT_TRUE(ratio.has_value()) << n;
    EXPECT_NEAR(std::abs(*ratio - std::pow(1.5, n / 2.0)), 0.0, kTol) << n;
    EXPECT_LT((d / d.norm() - o / o.norm()).lpNorm<Eigen::Infinity>(), kTol) << n;
  }
}

TEST(Aklt, SiteTensorIsTheMpsMatrices) {
  const Tensor t = evaluate(aklt_site());
  ASSERT_EQ(t.shape(), (std::vector<int>{2, 3, 2}));
  const auto m = aklt_mps_matrices();
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        EXPECT_NEAR(std::abs(t.data()[(a * 3 + k) * 2 + b] - std::sqrt(1.5) * m[k](a, b)), 0.0, kTol);
      }
    }
  }
}

TEST(Aklt, BondsAreAnnihilatedBySpinTwoProjector) {
  for (int n = 2; n <= 6; ++n) EXPECT_LE(aklt_ground_check(AKLTConfig{n}), kTol) << n;
}

TEST(Aklt, RandomStateIsNotAGroundState) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Vector v(4 * 81);
  for (auto& x : v) x = Complex(g(rng), g(rng));
  EXPECT_GT(spin2_bond_residual(v, 4), 0.1);
}

TEST(Aklt, HamiltonianIsSumOfSpinTwoProjectors) {
  const Matrix h = aklt_bond_hamiltonian();
  const Matrix expected = 2.0 * (spin2_projector() - Matrix::Identity(9, 9) / 3.0);
  EXPECT_LT(max_abs_diff(h, expected), kTol);
  const Matrix p = spin2_projector();
  EXPECT_LT(max_abs_diff(Matrix(p * p), p), kTol);
  EXPECT_NEAR(p.trace().real(), 5.0, kTol);
}

TEST(Aklt, ConfigurationAmplitudes) {
  AKLTConfig allowed{4, {1, 0, 0, -1}};
  EXPECT_GT(std::abs(aklt_config_amplitude(allowed)), 1e-3);
  AKLTConfig forbidden{3, {1, 0, 1}};
  EXPECT_LE(std::abs(aklt_config_amplitude(forbidden)), 1e-12);
  AKLTConfig zeros{2, {0, 0}};
  EXPECT_NEAR(std::abs(aklt_config_amplitude(zeros) - aklt_config_amplitude_oracle(zeros)), 0.0,
              kTol);
  Vector e0 = Vector::Zero(2);
  e0[0] = 1.0;
  zeros.left_edge = e0;
  zeros.right_edge = e0;
  EXPECT_NEAR(std::abs(aklt_config_amplitude(zeros) - aklt_config_amplitude_oracle(zeros)), 0.0,
              kTol);
}

TEST(Aklt, ConfigErrors) {
  EXPECT_THROW(aklt_chain(AKLTConfig{1}), ValidationError);
  EXPECT_THROW(aklt_config_amplitude(AKLTConfig{3, {1, 0}}), ArityMismatch);
  EXPECT_THROW(aklt_config_amplitude(AKLTConfig{2, {2, 0}}), InvalidMagnetic);
  EXPECT_THROW(aklt_chain(AKLTConfig{40}), SizeExceeded);
}

// --- QML -------------------------------------------------------------------

TEST(Qml, BrickWallTiling) {
  EXPECT_EQ(brick_wall(4, 2), (std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {1, 2}}));
  EXPECT_EQ((AnsatzSpec{6, 3, {}}.gate_count()), 3 + 2 + 3);
  EXPECT_THROW((AnsatzSpec{3, 1, {0.0}}.validate()), ValidationError);
  EXPECT_THROW((AnsatzSpec{4, 1, {0.0}}.validate()), ArityMismatch);
}

TEST(Qml, ZeroAnglesGiveSingletExpectation) {
  EXPECT_NEAR(qml_expectation({2, 1, {0.0}}, {1, 0}), -1.0, kTol);
  EXPECT_NEAR(qml_expectation({4, 2, {0.0, 0.0, 0.0}}, {1, 0, 3, 2}), 1.0, kTol);
  EXPECT_NEAR(qml_expectation({4, 2, {0.0, 0.0, 0.0}}, {0, 1, 2, 3}), 1.0, kTol);
}

TEST(Qml, PhaseOnlyGateHasZeroGradient) {
  for (double t : {0.0, 0.4, 2.5}) {
    EXPECT_NEAR(qml_gradient({2, 1, {t}}, {1, 0}, 0), 0.0, 1e-8);
  }
}

TEST(Qml, FiniteDifferenceMatchesShiftRule) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> a(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 5; ++trial) {
    AnsatzSpec spec{4, 3, {}};
    for (int k = 0; k < spec.gate_count(); ++k) spec.theta.push_back(a(rng));
    for (int k = 0; k < spec.gate_count(); ++k) {
      EXPECT_NEAR(qml_gradient(spec, {2, 0, 3, 1}, k), qml_gradient_shift(spec, {2, 0, 3, 1}, k),
                  1e-5);
    }
  }
}

TEST(Qml, VarianceIsSeedReproducible) {
  const std::vector<int> h = {0, 2, 1, 3};
  const auto a = qml_grad_variance(4, 2, h, 2, 2000, 99);
  const auto b = qml_grad_variance(4, 2, h, 2, 2000, 99);
  EXPECT_EQ(a.variance, b.variance);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_GT(a.variance, 1e-3);
  const auto c = qml_grad_variance(4, 2, h, 2, 2000, 100);
  EXPECT_LE(std::abs(a.variance - c.variance),
            3.0 * std::hypot(a.std_error, c.std_error));
}

TEST(Qml, VertexGateMatrixIsTheGateDiagram) {
  const double t = 0.77;
  const Matrix v = vertex_gate_matrix(t);
  EXPECT_LT(max_abs_diff(Matrix(v * v.adjoint()), Matrix(Matrix::Identity(4, 4))), kTol);
}

// --- LQG -------------------------------------------------------------------

TEST(Lqg, VolumeDiagramMatchesPauliSum) {
  EXPECT_LT(max_abs_diff(evaluate_matrix(lqg_vtilde2()), lqg_vtilde2_oracle()), 1e-12);
}

TEST(Lqg, MinimalVolumeEigenvector) {
  const EigenCheck c = lqg_min_volume_check();
  EXPECT_LE(c.residual, kTol);
  EXPECT_NEAR(std::abs(c.eigenvalue), std::sqrt(3.0) / 4.0, kTol);
  // The i/8 prefactor leaves a unit phase i against the real target.
  EXPECT_NEAR(std::abs(c.phase_to_target - Complex(0.0, 1.0)), 0.0, kTol);
}

TEST(Lqg, IntertwinerComponents) {
  const auto c = lqg_intertwiner_components();
  // All of the state lies in the two coupling-tree states.
  EXPECT_NEAR(std::norm(c[0]) + std::norm(c[1]), lqg_intertwiner_state().squaredNorm(), kTol);
  // On the normalised tree states the ratio is i.
  EXPECT_NEAR(std::abs(c[1] / c[0] - Complex(0.0, 1.0)), 0.0, kTol);
}

TEST(Lqg, AreaEigenvalue) {
  LQGConstants unit;
  unit.unit_prefactor = true;
  EXPECT_NEAR(area_eigenvalue(SpinLabel(1), unit), std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_NEAR(area_eigenvalue(SpinLabel(1)), 8.0 * std::numbers::pi * std::sqrt(3.0) / 2.0, 1e-12);
  LQGConstants bad;
  bad.gamma = -1.0;
  EXPECT_THROW(area_eigenvalue(SpinLabel(1), bad), ValidationError);
}

}  // namespace
}  // namespace spinzx
