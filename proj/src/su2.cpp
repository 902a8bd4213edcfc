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

#include "spinzx/su2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spinzx {

namespace {

int parity_sign(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

void check_magnetic(SpinLabel j, MagneticLabel m) { (void)basis_index(j, m); }

void check_permutation(const std::vector<int>& perm) {
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) {
      throw InvalidPermutation("not a permutation of 0.." +
                               std::to_string(perm.size() - 1));
    }
  }
}

}  // namespace

double ln_factorial(int n) {
  if (n < 0) throw InvalidMagnetic("factorial of a negative number");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

bool SpinTriple::admissible() const {
  const int a = j1.twice();
  const int b = j2.twice();
  const int c = j3.twice();
  if ((a + b + c) % 2 != 0) return false;
  return c >= std::abs(a - b) && c <= a + b;
}

bool triangle_ok(const SpinTriple& t) { return t.admissible(); }

double wigner_3jm(const SpinTriple& t, MagneticLabel m1, MagneticLabel m2,
                  MagneticLabel m3) {
  check_magnetic(t.j1, m1);
  check_magnetic(t.j2, m2);
  check_magnetic(t.j3, m3);
  if (!t.admissible()) return 0.0;
  if (m1.twice() + m2.twice() + m3.twice() != 0) return 0.0;
  // Every quantity below is an integer once the twice-labels are halved.
  const int j1 = t.j1.twice();
  const int j2 = t.j2.twice();
  const int j3 = t.j3.twice();
  const int a = m1.twice();
  const int b = m2.twice();
  const int c = m3.twice();
  auto half = [](int twice) { return twice / 2; };
  const double ln_delta =
      ln_factorial(half(j1 + j2 - j3)) + ln_factorial(half(j1 - j2 + j3)) +
      ln_factorial(half(-j1 + j2 + j3)) - ln_factorial(half(j1 + j2 + j3) + 1);
  const double ln_m = ln_factorial(half(j1 + a)) + ln_factorial(half(j1 - a)) +
                      ln_factorial(half(j2 + b)) + ln_factorial(half(j2 - b)) +
                      ln_factorial(half(j3 + c)) + ln_factorial(half(j3 - c));
  const double ln_pref = 0.5 * (ln_delta + ln_m);
  const int k_min = std::max({0, half(j2 - j3 - a), half(j1 - j3 + b)});
  const int k_max = std::min({half(j1 + j2 - j3), half(j1 - a), half(j2 + b)});
  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double ln_den =
        ln_factorial(k) + ln_factorial(half(j3 - j2 + a) + k) +
        ln_factorial(half(j3 - j1 - b) + k) +
        ln_factorial(half(j1 + j2 - j3) - k) + ln_factorial(half(j1 - a) - k) +
        ln_factorial(half(j2 + b) - k);
    sum += parity_sign(k) * std::exp(ln_pref - ln_den);
  }
  return parity_sign(half(j1 - j2 - c)) * sum;
}

double clebsch_gordan(SpinLabel j1, MagneticLabel m1, SpinLabel j2,
                      MagneticLabel m2, SpinLabel j3, MagneticLabel m3) {
  check_magnetic(j1, m1);
  check_magnetic(j2, m2);
  check_magnetic(j3, m3);
  if (m1.twice() + m2.twice() != m3.twice()) return 0.0;
  const SpinTriple t{j1, j2, j3};
  if (!t.admissible()) return 0.0;
  const int exponent = (-j1.twice() + j2.twice() - m3.twice()) / 2;
  return parity_sign(std::abs(exponent)) * std::sqrt(j3.twice() + 1.0) *
         wigner_3jm(t, m1, m2, MagneticLabel(-m3.twice()));
}

double normalisation_N(const SpinTriple& t) {
  if (!t.admissible()) {
    throw InadmissibleTriple("(" + t.j1.str() + ", " + t.j2.str() + ", " +
                             t.j3.str() + ") violates the triangle conditions");
  }
  const int a = t.j1.twice();
  const int b = t.j2.twice();
  const int c = t.j3.twice();
  const double ln_inv =
      0.5 * (ln_factorial(a) + ln_factorial(b) + ln_factorial(c) -
             ln_factorial((a + b + c) / 2 + 1) - ln_factorial((b + c - a) / 2) -
             ln_factorial((a + c - b) / 2) - ln_factorial((a + b - c) / 2));
  return std::exp(-ln_inv);
}

Matrix permutation_unitary(const std::vector<int>& perm,
                           const std::vector<int>& dims) {
  if (perm.size() != dims.size()) {
    throw InvalidPermutation("permutation length does not match factor count");
  }
  check_permutation(perm);
  const int n = static_cast<int>(dims.size());
  std::vector<int> out_dims(dims.size());
  for (int i = 0; i < n; ++i) out_dims[perm[i]] = dims[i];
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(total),
                          static_cast<Eigen::Index>(total));
  std::vector<int> digits(dims.size(), 0);
  std::vector<int> moved(dims.size(), 0);
  for (std::size_t col = 0; col < total; ++col) {
    std::size_t rest = col;
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(rest % static_cast<std::size_t>(dims[i]));
      rest /= static_cast<std::size_t>(dims[i]);
    }
    for (int i = 0; i < n; ++i) moved[perm[i]] = digits[i];
    std::size_t row = 0;
    for (int i = 0; i < n; ++i) {
      row = row * static_cast<std::size_t>(out_dims[i]) +
            static_cast<std::size_t>(moved[i]);
    }
    u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return u;
}

Matrix permutation_unitary(const std::vector<int>& perm, int n) {
  return permutation_unitary(perm, std::vector<int>(static_cast<std::size_t>(n), 2));
}

Matrix symmetriser_dense(int n, const OracleLimits& limits) {
  if (n < 0) throw InvalidPermutation("negative qubit count");
  if (n > limits.max_qubits) {
    throw SizeExceeded("symmetriser on " + std::to_string(n) +
                       " qubits exceeds the cap of " +
                       std::to_string(limits.max_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix acc = Matrix::Zero(dim, dim);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double count = 0;
  do {
    acc += permutation_unitary(perm, n);
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc / count;
}

AngularMomentum angular_momentum(SpinLabel j, const OracleLimits& limits) {
  if (j.twice() > limits.max_twice_j) {
    throw SizeExceeded("spin " + j.str() + " exceeds the configured cap");
  }
  const int d = j.dim();
  const double jj = j.value();
  AngularMomentum a;
  a.J3 = Matrix::Zero(d, d);
  a.Jplus = Matrix::Zero(d, d);
  a.Jminus = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = jj - k;
    a.J3(k, k) = m;
    // J+ |m> = sqrt((j-m)(j+m+1)) |m+1>, and |m+1> sits at index k-1.
    if (k > 0) a.Jplus(k - 1, k) = std::sqrt((jj - m) * (jj + m + 1));
    if (k + 1 < d) a.Jminus(k + 1, k) = std::sqrt((jj + m) * (jj - m + 1));
  }
  a.J1 = (a.Jplus + a.Jminus) / 2.0;
  a.J2 = (a.Jplus - a.Jminus) / Complex(0, 2);
  return a;
}

void check_su2(const Matrix& u, double tolerance) {
  if (u.rows() != 2 || u.cols() != 2) throw NotSU2("matrix is not 2x2");
  const double unitary =
      (u * u.adjoint() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  if (unitary > tolerance || std::abs(det - 1.0) > tolerance) {
    throw NotSU2("matrix is not unitary with unit determinant");
  }
}

Matrix wigner_D_oracle(SpinLabel j, const Matrix& u, double tolerance) {
  check_su2(u, tolerance);
  const Complex a = u(0, 0);
  const Complex b = u(0, 1);
  const Complex c = u(1, 0);
  const Complex d = u(1, 1);
  const int tj = j.twice();
  const int dim = j.dim();
  Matrix out = Matrix::Zero(dim, dim);
  auto ipow = [](Complex z, int e) {
    Complex r = 1.0;
    for (int i = 0; i < e; ++i) r *= z;
    return r;
  };
  for (int row = 0; row < dim; ++row) {
    const int tm = tj - 2 * row;
    for (int col = 0; col < dim; ++col) {
      const int tn = tj - 2 * col;
      // Integer exponents: j-m, j+m, j-n, j+n.
      const int jm_minus = (tj - tm) / 2;
      const int jm_plus = (tj + tm) / 2;
      const int jn_minus = (tj - tn) / 2;
      const int jn_plus = (tj + tn) / 2;
      const int m_minus_n = (tm - tn) / 2;
      const double ln_root = 0.5 * (ln_factorial(jm_minus) + ln_factorial(jm_plus) +
                                    ln_factorial(jn_minus) + ln_factorial(jn_plus));
      Complex e = 0.0;
      for (int k = 0; k <= tj; ++k) {
        if (jm_minus - k < 0 || jn_plus - k < 0 || m_minus_n + k < 0) continue;
        const double ln_den = ln_factorial(k) + ln_factorial(jm_minus - k) +
                              ln_factorial(jn_plus - k) +
                              ln_factorial(m_minus_n + k);
        e += std::exp(ln_root - ln_den) * ipow(a, jn_plus - k) *
             ipow(b, m_minus_n + k) * ipow(c, k) * ipow(d, jm_minus - k);
      }
      out(row, col) = e;
    }
  }
  return out;
}

Matrix random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double q[4];
  double norm = 0;
  for (double& x : q) {
    x = g(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  const Complex alpha(q[0] / norm, q[1] / norm);
  const Complex beta(q[2] / norm, q[3] / norm);
  Matrix u(2, 2);
  u << alpha, beta, -std::conj(beta), std::conj(alpha);
  return u;
}

std::vector<SpinLabel> CouplingNode::leaves() const {
  if (is_leaf()) return {spin};
  std::vector<SpinLabel> out = children[0].leaves();
  std::vector<SpinLabel> right = children[1].leaves();
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

namespace {

void validate_node(const CouplingNode& n) {
  if (n.is_leaf()) return;
  if (n.children.size() != 2) {
    throw InadmissibleTree("internal coupling nodes need exactly two children");
  }
  const SpinTriple t{n.children[0].spin, n.children[1].spin, n.spin};
  if (!t.admissible()) {
    throw InadmissibleTree("cannot couple " + t.j1.str() + " and " +
                           t.j2.str() + " to " + t.j3.str());
  }
  validate_node(n.children[0]);
  validate_node(n.children[1]);
}

Vector node_state(const CouplingNode& n, MagneticLabel m) {
  if (n.is_leaf()) {
    Vector v = Vector::Zero(n.spin.dim());
    v(basis_index(n.spin, m)) = 1.0;
    return v;
  }
  const SpinLabel ja = n.children[0].spin;
  const SpinLabel jb = n.children[1].spin;
  Vector acc;
  for (int ka = 0; ka < ja.dim(); ++ka) {
    const MagneticLabel ma = magnetic_at(ja, ka);
    const int tmb = m.twice() - ma.twice();
    if (std::abs(tmb) > jb.twice()) continue;
    const MagneticLabel mb(tmb);
    const double c = clebsch_gordan(ja, ma, jb, mb, n.spin, m);
    if (c == 0.0) continue;
    Vector term = c * kron(node_state(n.children[0], ma), node_state(n.children[1], mb));
    if (acc.size() == 0) {
      acc = term;
    } else {
      acc += term;
    }
  }
  if (acc.size() == 0) {
    std::size_t dim = 1;
    for (auto s : n.leaves()) dim *= static_cast<std::size_t>(s.dim());
    acc = Vector::Zero(static_cast<Eigen::Index>(dim));
  }
  return acc;
}

}  // namespace

void CouplingTree::validate() const {
  validate_node(root);
  (void)basis_index(root.spin, m);
}

Vector coupling_tree_state(const CouplingTree& tree) {
  tree.validate();
  return node_state(tree.root, tree.m);
}

Complex pqc_amplitude_oracle(const CouplingTree& bra, const CouplingTree& ket,
                             const std::vector<int>& perm) {
  const auto lb = bra.root.leaves();
  const auto lk = ket.root.leaves();
  if (lb.size() != lk.size()) {
    throw LeafCountMismatch("bra has " + std::to_string(lb.size()) +
                            " leaves, ket has " + std::to_string(lk.size()));
  }
  std::vector<int> dims;
  for (auto s : lk) dims.push_back(s.dim());
  const Vector b = coupling_tree_state(bra);
  const Vector k = coupling_tree_state(ket);
  const Matrix u = permutation_unitary(perm, dims);
  return (b.adjoint() * u * k)(0, 0);
}

}  // namespace spinzx
