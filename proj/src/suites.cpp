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

#include "spinzx/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "spinzx/applications.hpp"
#include "spinzx/errors.hpp"
#include "spinzx/rewrite.hpp"
#include "spinzx/spin.hpp"
#include "spinzx/su2.hpp"

namespace spinzx {

namespace {

constexpr double kStrict = 1e-12;
const Complex kI(0.0, 1.0);

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_complex(Complex z) {
  if (std::abs(z.imag()) < 1e-15) return format_double(z.real());
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Accumulates the worst residual of one property over many cases.
class Tally {
 public:
  Tally(std::string name, std::string anchor, double bound)
      : check_{std::move(name), std::move(anchor), Check::Kind::kAtMost, 0.0, bound, 0, {}} {}
  void add(double residual) {
    check_.value = std::max(check_.value, residual);
    ++check_.cases;
  }
  void add(const Matrix& got, const Matrix& expected) {
    if (got.rows() != expected.rows() || got.cols() != expected.cols()) {
      add(std::numeric_limits<double>::infinity());
      return;
    }
    add(max_abs_diff(got, expected));
  }
  void note(std::string text) { check_.note = std::move(text); }
  Check done() const { return check_; }

 private:
  Check check_;
};

Check at_least(std::string name, std::string anchor, double value, double bound, int cases) {
  return {std::move(name), std::move(anchor), Check::Kind::kAtLeast, value, bound, cases, {}};
}

Matrix mat(const Diagram& d, const SuiteConfig& c) { return evaluate_matrix(d, c.eval); }

std::vector<int> qubit_dims(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

Diagram trace_last(const Diagram& d) {
  const int n = d.n_inputs();
  return compose({tensor(identity_wires(qubit_dims(n - 1)), cup(2)), tensor(d, identity(2)),
                  tensor(identity_wires(qubit_dims(n - 1)), cap(2))});
}

std::vector<SpinTriple> admissible_triples(int max_twice) {
  std::vector<SpinTriple> out;
  for (int a = 0; a <= max_twice; ++a) {
    for (int b = 0; b <= max_twice; ++b) {
      for (int c = 0; c <= max_twice; ++c) {
        SpinTriple t{SpinLabel(a), SpinLabel(b), SpinLabel(c)};
        if (t.admissible() && a + b + c > 0) out.push_back(t);
      }
    }
  }
  return out;
}

std::string tree_str(const CouplingNode& n) {
  if (n.is_leaf()) return n.spin.str();
  std::string s = "(";
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i > 0) s += " ";
    s += tree_str(n.children[i]);
  }
  return s + ")->" + n.spin.str();
}

std::string perm_str(const std::vector<int>& perm) {
  std::string s = "[";
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(perm[i]);
  }
  return s + "]";
}

}  // namespace

std::string Check::str() const {
  char buf[160];
  const char* label = kind == Kind::kAtMost ? "max residual" : "min value";
  const char* rel = kind == Kind::kAtMost ? "<=" : ">=";
  std::snprintf(buf, sizeof buf, " %s %.3e %s %.1e, %d cases", label, value, rel, bound, cases);
  std::string s = std::string(pass() ? "PASS " : "FAIL ") + name + " [" + anchor + "]" + buf;
  if (!note.empty()) s += " (" + note + ")";
  return s;
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

bool DemoReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

std::string Fact::str() const {
  std::string v;
  if (const auto* s = std::get_if<std::string>(&value)) {
    v = *s;
  } else if (const auto* d = std::get_if<double>(&value)) {
    v = format_double(*d);
  } else {
    v = format_complex(std::get<Complex>(value));
  }
  return key + ": " + v;
}

// ---------------------------------------------------------------------------
// Random diagrams for soundness sweeps.

Diagram random_small_diagram(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int dim = std::uniform_int_distribution<int>(2, 3)(rng);
  const int width = std::uniform_int_distribution<int>(1, 2)(rng);
  const std::vector<int> dims(static_cast<std::size_t>(width), dim);
  Diagram d = identity_wires(dims);
  const int layers = std::uniform_int_distribution<int>(2, 5)(rng);
  for (int l = 0; l < layers; ++l) {
    std::vector<Diagram> row;
    for (int w = 0; w < width; ++w) {
      std::vector<Complex> p;
      for (int k = 1; k < dim; ++k) p.emplace_back(u(rng), u(rng));
      switch (pick(rng)) {
        case 0:
          row.push_back(z_spider(1, 1, dim, p));
          break;
        case 1:
          row.push_back(z_spider(1, 1, dim));
          break;
        case 2:
          row.push_back(x_spider(1, 1, dim, std::uniform_int_distribution<int>(0, dim - 1)(rng)));
          break;
        case 3:
          row.push_back(hadamard(dim, u(rng) > 0));
          break;
        case 4:
          row.push_back(dualiser(dim));
          break;
        default:
          row.push_back(identity(dim));
      }
    }
    d = compose(d, tensor(row));
    if (width == 2 && pick(rng) < 2) {
      d = compose(d, compose(z_spider(2, 1, dim), x_spider(1, 2, dim)));
    }
  }
  if (pick(rng) == 0) {
    const std::vector<Complex> p(static_cast<std::size_t>(dim - 1), Complex(0.5, 2.0));
    d = tensor(d, compose(x_spider(0, 1, dim, 1), z_spider(1, 0, dim, p)));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Suites.

std::vector<std::string> suite_names() {
  return {"rules", "symmetriser", "threej", "lie", "binor", "vertex"};
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  if (name == "rules") return verify_rules(config);
  if (name == "symmetriser") return verify_symmetriser(config);
  if (name == "threej") return verify_threej(config);
  if (name == "lie") return verify_lie(config);
  if (name == "binor") return verify_binor(config);
  if (name == "vertex") return verify_vertex_gate(config);
  throw ValidationError("unknown suite '" + name + "'");
}

SuiteReport verify_rules(const SuiteConfig& config) {
  Stopwatch clock;
  SuiteReport report{"rules", {}, 0.0};
  const CertificationConfig cert{config.tolerance, config.seed};
  std::vector<CertifiedRule> rules;
  for (RewriteRule def : builtin_rule_definitions()) {
    const std::string name = def.name;
    const std::string anchor = def.anchor;
    Check c{"certify " + name, anchor, Check::Kind::kAtMost, 0.0, config.tolerance, 0, {}};
    try {
      rules.push_back(certify(std::move(def), cert));
      c.cases = rules.back().report().samples;
      c.note = std::to_string(rules.back().report().sites) + " sites rewritten";
    } catch (const SoundnessFailure& e) {
      c.value = std::numeric_limits<double>::infinity();
      c.note = e.what();
    }
    report.checks.push_back(c);
  }

  Tally random("random rewrite applications", "rewrites preserve the tensor", config.tolerance);
  std::mt19937_64 rng(config.seed);
  int attempts = 0;
  while (random.done().cases < 1000 && attempts < 20000) {
    ++attempts;
    const Diagram d = random_small_diagram(rng);
    const Tensor before = evaluate(d, config.eval);
    for (const CertifiedRule& r : rules) {
      for (const MatchSite& site : find_matches(d, r)) {
        const Tensor after = evaluate(apply_rule(d, r, site), config.eval);
        random.add(after.shape() == before.shape() ? max_abs_diff(after, before)
                                                   : std::numeric_limits<double>::infinity());
      }
    }
  }
  report.checks.push_back(random.done());
  report.seconds = clock.seconds();
  return report;
}

SuiteReport verify_symmetriser(const SuiteConfig& config) {
  Stopwatch clock;
  SuiteReport report{"symmetriser", {}, 0.0};
  const double tol = config.tolerance;
  Tally oracle("diagram equals permutation average", "symmetriser oracle", kStrict);
  Tally idem("idempotence", "S_n S_n = S_n", tol);
  Tally adj("self-adjointness", "S_n^dagger = S_n", tol);
  Tally inv("unitary invariance", "u^{(x)n} S_n = S_n u^{(x)n}", tol);
  Tally stack("stacking", "S_n absorbs S_k on any k consecutive legs", tol);
  Tally capping("singlet capping", "S_n capped by a singlet is zero", tol);
  Tally looping("looping constants", "one traced leg gives (n+1)/n S_{n-1}", tol);
  std::mt19937_64 rng(config.seed);
  for (int n = 1; n <= 6; ++n) {
    const Diagram s = symmetriser(n);
    const Matrix sm = mat(s, config);
    oracle.add(sm, symmetriser_dense(n));
    idem.add(mat(compose(s, s), config), sm);
    adj.add(mat(adjoint(s), config), sm);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix u = random_su2(rng) * std::exp(kI * (0.3 * trial));
      const Diagram lift = tensor_power(matrix_box(u, {2}, {2}), n);
      inv.add(mat(compose(lift, s), config), mat(compose(s, lift), config));
    }
    if (n < 2) continue;
    for (int k = 1; k <= n; ++k) {
      for (int offset = 0; offset + k <= n; ++offset) {
        const Diagram inner = tensor({identity_wires(qubit_dims(offset)), symmetriser(k),
                                      identity_wires(qubit_dims(n - k - offset))});
        stack.add(mat(compose(inner, s), config), sm);
        stack.add(mat(compose(s, inner), config), sm);
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        // Bring legs i and j to the front, then cap them.
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        perm.erase(perm.begin() + j);
        perm.erase(perm.begin() + i);
        perm.insert(perm.begin(), {i, j});
        const Diagram capped =
            compose({s, permutation(qubit_dims(n), perm),
                     tensor(singlet_effect(), identity_wires(qubit_dims(n - 2)))});
        capping.add(mat(capped, config).cwiseAbs().maxCoeff());
      }
    }
    const double constant = (n + 1.0) / n;
    looping.add(mat(trace_last(s), config), constant * symmetriser_dense(n - 1));
  }
  looping.note("constants 3/2, 4/3, 5/4, 6/5, 7/6");
  for (const Tally* t : {&oracle, &idem, &adj, &inv, &stack, &capping, &looping}) {
    report.checks.push_back(t->done());
  }
  report.seconds = clock.seconds();
  return report;
}

SuiteReport verify_threej(const SuiteConfig& config) {
  Stopwatch clock;
  SuiteReport report{"threej", {}, 0.0};
  const double tol = config.tolerance;
  Tally coeff("3jm coefficients", "diagram 3jm state against the closed-form sum", tol);
  Tally norm("unit norm", "3jm state has unit norm", tol);
  Tally even("even permutations", "3jm invariant under cyclic permutations", tol);
  Tally odd("odd permutations", "odd permutations give (-1)^(j1+j2+j3)", tol);
  Tally flip("magnetic reversal", "negating every m gives (-1)^(j1+j2+j3)", tol);
  Tally selection("selection rule", "3jm vanishes unless m1 + m2 + m3 = 0", tol);
  for (const SpinTriple& t : admissible_triples(4)) {
    const Matrix v = mat(three_j_state(t), config);
    std::vector<SpinLabel> spins;
    for (SpinLabel j : {t.j1, t.j2, t.j3}) {
      if (j.twice() > 0) spins.push_back(j);
    }
    for (int k1 = 0; k1 <= t.j1.twice(); ++k1) {
      for (int k2 = 0; k2 <= t.j2.twice(); ++k2) {
        for (int k3 = 0; k3 <= t.j3.twice(); ++k3) {
          const int ks[3] = {k1, k2, k3};
          const SpinLabel js[3] = {t.j1, t.j2, t.j3};
          int idx = 0;
          for (int i = 0; i < 3; ++i) {
            if (js[i].twice() > 0) idx = idx * js[i].dim() + ks[i];
          }
          const MagneticLabel m1 = magnetic_at(t.j1, k1);
          const MagneticLabel m2 = magnetic_at(t.j2, k2);
          const MagneticLabel m3 = magnetic_at(t.j3, k3);
          const double w = wigner_3jm(t, m1, m2, m3);
          coeff.add(std::abs(v(idx, 0) - w));
          if (m1.twice() + m2.twice() + m3.twice() != 0) selection.add(std::abs(v(idx, 0)));
        }
      }
    }
    norm.add(std::abs(v.norm() - 1.0));
    if (spins.size() < 3) continue;
    const std::vector<int> dims = {t.j1.dim(), t.j2.dim(), t.j3.dim()};
    const int total = (t.j1.twice() + t.j2.twice() + t.j3.twice()) / 2;
    const double phase = total % 2 == 0 ? 1.0 : -1.0;
    const SpinTriple cyc{t.j2, t.j3, t.j1};
    even.add(mat(compose(three_j_state(t), permutation(dims, {1, 2, 0})), config),
             mat(three_j_state(cyc), config));
    const SpinTriple cyc2{t.j3, t.j1, t.j2};
    even.add(mat(compose(three_j_state(t), permutation(dims, {2, 0, 1})), config),
             mat(three_j_state(cyc2), config));
    for (const auto& [perm, swapped] :
         {std::pair{std::vector<int>{1, 0, 2}, SpinTriple{t.j2, t.j1, t.j3}},
          std::pair{std::vector<int>{0, 2, 1}, SpinTriple{t.j1, t.j3, t.j2}},
          std::pair{std::vector<int>{2, 1, 0}, SpinTriple{t.j3, t.j2, t.j1}}}) {
      odd.add(mat(compose(three_j_state(t), permutation(dims, perm)), config),
              phase * mat(three_j_state(swapped), config));
    }
    // Coefficient at (-m1, -m2, -m3) sits at the reversed basis indices.
    Vector reversed(v.rows());
    for (int k1 = 0; k1 < dims[0]; ++k1) {
      for (int k2 = 0; k2 < dims[1]; ++k2) {
        for (int k3 = 0; k3 < dims[2]; ++k3) {
          const int from = ((dims[0] - 1 - k1) * dims[1] + (dims[1] - 1 - k2)) * dims[2] +
                           (dims[2] - 1 - k3);
          reversed[(k1 * dims[1] + k2) * dims[2] + k3] = v(from, 0);
        }
      }
    }
    flip.add(Matrix(reversed), Matrix(phase * v));
  }
  coeff.note("all admissible spins up to 2, every magnetic combination");
  for (const Tally* t : {&coeff, &norm, &selection, &even, &odd, &flip}) {
    report.checks.push_back(t->done());
  }
  report.seconds = clock.seconds();
  return report;
}

SuiteReport verify_lie(const SuiteConfig& config) {
  Stopwatch clock;
  SuiteReport report{"lie", {}, 0.0};
  const double tol = config.tolerance;
  Tally cartesian("cartesian commutators", "[J_a, J_b] = i eps_abc J_c", tol);
  Tally ladder("ladder commutators", "[J+, J-] = 2 J3 and [J3, J+-] = +-J+-", tol);
  Tally generators("generator diagrams", "diagram generators equal the standard matrices", tol);
  Tally casimir("casimir", "J1^2 + J2^2 + J3^2 = j(j+1) I", tol);
  Tally wigner("wigner diagram", "diagram D^j(u) equals the closed-form matrix", tol);
  Tally hom("homomorphism", "D^j(u v) = D^j(u) D^j(v)", tol);
  for (int tj = 1; tj <= 6; ++tj) {
    const SpinLabel j(tj);
    const Diagram jp = ladder_diagram(j, Ladder::kRaise);
    const Diagram jm = ladder_diagram(j, Ladder::kLower);
    const Diagram j3 = j3_diagram(j);
    DiagramSum pm;
    pm.add(1.0, compose(jm, jp));
    pm.add(-1.0, compose(jp, jm));
    pm.add(-2.0, j3);
    ladder.add(evaluate_matrix(pm, config.eval).cwiseAbs().maxCoeff());
    for (const auto& [op, sign] : {std::pair{jp, 1.0}, std::pair{jm, -1.0}}) {
      DiagramSum c;
      c.add(1.0, compose(op, j3));
      c.add(-1.0, compose(j3, op));
      c.add(-sign, op);
      ladder.add(evaluate_matrix(c, config.eval).cwiseAbs().maxCoeff());
    }
    const Diagram js[3] = {j1_diagram(j), j2_diagram(j), j3};
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3;
      const int c = (a + 2) % 3;
      DiagramSum comm;
      comm.add(1.0, compose(js[b], js[a]));
      comm.add(-1.0, compose(js[a], js[b]));
      comm.add(-kI, js[c]);
      cartesian.add(evaluate_matrix(comm, config.eval).cwiseAbs().maxCoeff());
    }
    const AngularMomentum am = angular_momentum(j);
    generators.add(mat(js[0], config), am.J1);
    generators.add(mat(js[1], config), am.J2);
    generators.add(mat(js[2], config), am.J3);
    generators.add(mat(jp, config), am.Jplus);
    generators.add(mat(jm, config), am.Jminus);
  }
  for (int tj = 1; tj <= 8; ++tj) {
    const SpinLabel j(tj);
    Matrix sum = Matrix::Zero(tj + 1, tj + 1);
    for (const Diagram& g : {j1_diagram(j), j2_diagram(j), j3_diagram(j)}) {
      const Matrix m = mat(g, config);
      sum += m * m;
    }
    const Matrix expected = j.value() * (j.value() + 1.0) * Matrix::Identity(tj + 1, tj + 1);
    casimir.add(sum, expected);
  }
  std::mt19937_64 rng(config.seed);
  for (int tj = 1; tj <= 4; ++tj) {
    const SpinLabel j(tj);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix u = random_su2(rng);
      const Matrix v = random_su2(rng);
      const Matrix du = mat(wigner_diagram(j, u), config);
      const Matrix dv = mat(wigner_diagram(j, v), config);
      wigner.add(du, wigner_D_oracle(j, u));
      hom.add(mat(wigner_diagram(j, u * v), config), Matrix(du * dv));
    }
  }
  cartesian.note("j <= 3");
  casimir.note("j <= 4");
  hom.note("100 random pairs per j <= 2");
  for (const Tally* t : {&cartesian, &ladder, &generators, &casimir, &wigner, &hom}) {
    report.checks.push_back(t->done());
  }
  report.seconds = clock.seconds();
  return report;
}

SuiteReport verify_binor(const SuiteConfig& config) {
  Stopwatch clock;
  SuiteReport report{"binor", {}, 0.0};
  Tally loop("closed loop", "binor loop equals -2", kStrict);
  loop.add(std::abs(evaluate_scalar(compose(binor_cap(), binor_cup()), config.eval) - Complex(-2.0)));
  Tally skein("skein relation", "identity + crossing + cup-cap = 0", kStrict);
  DiagramSum s;
  s.add(1.0, identity_wires({2, 2}));
  s.add(1.0, binor_cross());
  s.add(1.0, compose(binor_cup(), binor_cap()));
  skein.add(evaluate_matrix(s, config.eval).cwiseAbs().maxCoeff());
  Tally antisym("antisymmetriser", "binor antisymmetriser equals S_n", kStrict);
  Tally traced("traced antisymmetriser", "closed loop equals (-1)^(2j) (2j+1)", kStrict);
  for (int n = 1; n <= 3; ++n) {
    const DiagramSum a = binor_antisym(n);
    antisym.add(evaluate_matrix(a, config.eval), symmetriser_dense(n));
    const Matrix closed = evaluate_matrix(binor_close(a), config.eval);
    const double expected = (n % 2 == 0 ? 1.0 : -1.0) * (n + 1);
    traced.add(std::abs(closed(0, 0) - expected));
  }
  traced.note("2j <= 3");
  for (const Tally* t : {&loop, &skein, &antisym, &traced}) report.checks.push_back(t->done());
  report.seconds = clock.seconds();
  return report;
}

SuiteReport verify_vertex_gate(const SuiteConfig& config) {
  Stopwatch clock;
  SuiteReport report{"vertex", {}, 0.0};
  // Triplet and singlet projectors straight from the Clebsch-Gordan table.
  const SpinLabel half(1);
  Matrix triplet = Matrix::Zero(4, 4);
  Vector singlet = Vector::Zero(4);
  for (int k1 = 0; k1 < 2; ++k1) {
    for (int k2 = 0; k2 < 2; ++k2) {
      singlet[k1 * 2 + k2] = clebsch_gordan(half, magnetic_at(half, k1), half,
                                            magnetic_at(half, k2), SpinLabel(0), MagneticLabel(0));
    }
  }
  for (int k3 = 0; k3 < 3; ++k3) {
    Vector v = Vector::Zero(4);
    for (int k1 = 0; k1 < 2; ++k1) {
      for (int k2 = 0; k2 < 2; ++k2) {
        v[k1 * 2 + k2] = clebsch_gordan(half, magnetic_at(half, k1), half, magnetic_at(half, k2),
                                        SpinLabel(2), magnetic_at(SpinLabel(2), k3));
      }
    }
    triplet += v * v.adjoint();
  }
  const Matrix singlet_proj = singlet * singlet.adjoint();
  const Matrix s2 = mat(schur2(), config);
  Tally projector("projector sum", "V(theta) = P_triplet + e^{i theta} P_singlet", kStrict);
  Tally composite("schur composite", "V(theta) = S2 P2(theta) S2^dagger", kStrict);
  Tally unitary("unitarity", "V(theta) V(theta)^dagger = I", config.tolerance);
  for (int k = 0; k < 16; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 16.0;
    const Matrix v = mat(vertex_gate(theta), config);
    projector.add(v, Matrix(triplet + std::exp(kI * theta) * singlet_proj));
    composite.add(v, Matrix(s2 * mat(p2(theta), config) * s2.adjoint()));
    unitary.add(Matrix(v * v.adjoint()), Matrix(Matrix::Identity(4, 4)));
  }
  Tally equivariance("equivariance", "[V(theta), u (x) u] = 0", config.tolerance);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix u = random_su2(rng);
    const Matrix uu = kron(u, u);
    const Matrix v = mat(vertex_gate(angle(rng)), config);
    equivariance.add(Matrix(v * uu), Matrix(uu * v));
  }
  projector.note("16-point theta grid");
  equivariance.note("20 random u");
  for (const Tally* t : {&projector, &composite, &unitary, &equivariance}) {
    report.checks.push_back(t->done());
  }
  report.seconds = clock.seconds();
  return report;
}

// ---------------------------------------------------------------------------
// Demos.

std::vector<std::string> demo_names() { return {"pqc", "aklt", "qml", "lqg"}; }

DemoReport run_demo(const std::string& name, const DemoOptions& options,
                    const SuiteConfig& config) {
  if (name == "pqc") return demo_pqc(config);
  if (name == "aklt") return demo_aklt(options.aklt_sites, config);
  if (name == "qml") return demo_qml(options, config);
  if (name == "lqg") return demo_lqg(config);
  throw ValidationError("unknown demo '" + name + "'");
}

DemoReport demo_pqc(const SuiteConfig& config) {
  Stopwatch clock;
  DemoReport r{"pqc", {}, {}, 0.0};
  const double tol = config.tolerance;
  const CouplingTree bra = pqc_example_bra();
  const CouplingTree ket = pqc_example_ket();
  const std::vector<int> perm = pqc_example_perm();
  EvalConfig eval = config.eval;
  eval.tolerance = tol;
  const PqcResult res = pqc_amplitude(bra, ket, perm, PqcMode::kBoth, eval);
  const Diagram network = pqc_network(bra, ket, perm);
  const double expected = std::sqrt(3.0) / 2.0;
  r.facts = {{"bra tree", tree_str(bra.root) + ", m = " + bra.m.str()},
             {"ket tree", tree_str(ket.root) + ", m = " + ket.m.str()},
             {"permutation", perm_str(perm)},
             {"network nodes", std::to_string(network.nodes().size())},
             {"bra squared norm", res.bra_norm},
             {"ket squared norm", res.ket_norm},
             {"raw network value", res.raw},
             {"diagram amplitude", *res.diagram},
             {"oracle amplitude", *res.oracle},
             {"expected", expected}};
  const std::string anchor = "PQC transition amplitude sqrt(3)/2";
  auto near = [&](std::string name, std::string a, double v, int cases = 1) {
    r.checks.push_back({std::move(name), std::move(a), Check::Kind::kAtMost, v, tol, cases, {}});
  };
  near("diagram amplitude", anchor, std::abs(*res.diagram - expected));
  near("oracle amplitude", anchor, std::abs(*res.oracle - expected));
  near("diagram agrees with oracle", anchor, std::abs(*res.diagram - *res.oracle));
  near("bra squared norm", "unnormalised bra norm 3/2", std::abs(res.bra_norm - 1.5));
  near("ket squared norm", "unnormalised ket norm 2", std::abs(res.ket_norm - 2.0));
  near("normalised raw value", "raw network value over sqrt(3)",
       std::abs(res.raw / std::sqrt(3.0) - expected));
  r.seconds = clock.seconds();
  return r;
}

DemoReport demo_aklt(int sites, const SuiteConfig& config) {
  Stopwatch clock;
  DemoReport r{"aklt", {}, {}, 0.0};
  const double tol = config.tolerance;
  if (sites < 2) throw ValidationError("AKLT demo needs at least 2 sites");
  AKLTConfig cfg;
  cfg.length = sites;
  const Diagram chain = aklt_chain(cfg);
  const Tensor t = evaluate(chain, config.eval);
  const Tensor o = aklt_mps_oracle(cfg);
  const Vector d = Eigen::Map<const Vector>(t.data().data(), static_cast<Eigen::Index>(t.size()));
  const Vector m = Eigen::Map<const Vector>(o.data().data(), static_cast<Eigen::Index>(o.size()));
  const Complex overlap = m.dot(d);
  const Complex ratio = overlap / m.squaredNorm();
  const Complex phase = overlap / std::abs(overlap);
  const double shape_residual =
      (d / d.norm() - phase * m / m.norm()).lpNorm<Eigen::Infinity>();
  const double bond = spin2_bond_residual(d, sites);

  // Sequences whose nonzero entries fail to alternate in sign are forbidden.
  double forbidden_max = 0.0;
  double allowed_min = std::numeric_limits<double>::infinity();
  int forbidden = 0;
  int allowed = 0;
  const std::size_t configs = static_cast<std::size_t>(std::pow(3, sites));
  for (std::size_t s = 0; s < configs; ++s) {
    std::vector<int> k(static_cast<std::size_t>(sites));
    std::size_t rest = s;
    for (int i = sites - 1; i >= 0; --i) {
      k[static_cast<std::size_t>(i)] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    int last = 0;
    bool ok = true;
    for (int ki : k) {
      const int mval = 1 - ki;
      if (mval == 0) continue;
      if (mval == last) ok = false;
      last = mval;
    }
    double amp = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const std::size_t idx = (static_cast<std::size_t>(a) * configs + s) * 2 + b;
        amp = std::max(amp, std::abs(t.data()[idx]));
      }
    }
    if (ok) {
      ++allowed;
      allowed_min = std::min(allowed_min, amp);
    } else {
      ++forbidden;
      forbidden_max = std::max(forbidden_max, amp);
    }
  }
  r.facts = {{"sites", static_cast<double>(sites)},
             {"chain nodes", std::to_string(chain.nodes().size())},
             {"state entries", static_cast<double>(t.size())},
             {"diagram / MPS ratio", ratio},
             {"expected ratio (3/2)^(N/2)", std::pow(1.5, sites / 2.0)},
             {"max spin-2 bond residual", bond},
             {"allowed sequences", static_cast<double>(allowed)},
             {"forbidden sequences", static_cast<double>(forbidden)}};
  r.checks.push_back({"spin-2 bond residual", "AKLT state has no spin-2 component on any bond",
                      Check::Kind::kAtMost, bond, tol, sites - 1, {}});
  r.checks.push_back({"proportional to MPS", "normalised chain equals the normalised MPS",
                      Check::Kind::kAtMost, shape_residual, tol, static_cast<int>(t.size()), {}});
  r.checks.push_back({"forbidden sequences vanish",
                      "same-sign spins separated only by zeros have zero amplitude",
                      Check::Kind::kAtMost, forbidden_max, kStrict, forbidden, {}});
  r.checks.push_back(at_least("allowed sequences nonzero",
                              "antiferromagnetic sequences have nonzero amplitude", allowed_min,
                              1e-6, allowed));
  r.seconds = clock.seconds();
  return r;
}

DemoReport demo_qml(const DemoOptions& options, const SuiteConfig& config) {
  Stopwatch clock;
  DemoReport r{"qml", {}, {}, 0.0};
  const int n = options.qml_qubits;
  const int layers = options.qml_layers;
  AnsatzSpec spec{n, layers, {}};
  spec.theta.assign(static_cast<std::size_t>(spec.gate_count()), 0.0);
  spec.validate();
  // Observable: the swap of qubits 1 and 2 (0 and 1 on two qubits).
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  if (n >= 4) {
    std::swap(perm[1], perm[2]);
  } else {
    std::swap(perm[0], perm[1]);
  }
  const int index = spec.gate_count() - 1;
  const int samples = options.qml_samples;
  const VarianceEstimate a = qml_grad_variance(n, layers, perm, index, samples, config.seed);
  const VarianceEstimate b = qml_grad_variance(n, layers, perm, index, samples, config.seed);

  // Independent re-simulation: fresh angles and shift-rule gradients.
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> g(static_cast<std::size_t>(samples));
  for (double& x : g) {
    for (double& th : spec.theta) th = angle(rng);
    x = qml_gradient_shift(spec, perm, index);
  }
  const double mean = std::accumulate(g.begin(), g.end(), 0.0) / samples;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : g) {
    m2 += (x - mean) * (x - mean);
    m4 += std::pow(x - mean, 4);
  }
  m2 /= samples;
  m4 /= samples;
  const double var = m2 * samples / (samples - 1.0);
  const double se = std::sqrt(std::max(0.0, m4 - m2 * m2) / samples);
  const double combined = std::hypot(a.std_error, se);

  std::string tiling;
  for (const auto& [p, q] : brick_wall(n, layers)) {
    if (!tiling.empty()) tiling += " ";
    tiling += "(" + std::to_string(p) + "," + std::to_string(q) + ")";
  }
  r.facts = {{"qubits", static_cast<double>(n)},
             {"layers", static_cast<double>(layers)},
             {"gates", tiling},
             {"observable permutation", perm_str(perm)},
             {"parameter index", static_cast<double>(index)},
             {"samples", static_cast<double>(samples)},
             {"gradient mean", a.mean},
             {"gradient variance", a.variance},
             {"standard error", a.std_error},
             {"re-simulated variance", var},
             {"re-simulated standard error", se}};
  r.checks.push_back({"seed reproducible", "equal seeds give identical estimates",
                      Check::Kind::kAtMost,
                      std::abs(a.variance - b.variance) + std::abs(a.std_error - b.std_error), 0.0,
                      2, {}});
  r.checks.push_back({"independent re-simulation", "variance estimates agree within 3 standard errors",
                      Check::Kind::kAtMost, std::abs(a.variance - var),
                      3.0 * combined + config.tolerance, 2 * samples, {}});
  r.checks.back().note = "bound is 3 combined standard errors";
  r.seconds = clock.seconds();
  return r;
}

DemoReport demo_lqg(const SuiteConfig& config) {
  Stopwatch clock;
  DemoReport r{"lqg", {}, {}, 0.0};
  const double tol = config.tolerance;
  const Diagram v2 = lqg_vtilde2();
  const double op_residual = max_abs_diff(evaluate_matrix(v2, config.eval), lqg_vtilde2_oracle());
  EvalConfig eval = config.eval;
  eval.tolerance = tol;
  const EigenCheck e = lqg_min_volume_check(eval);
  const auto comp = lqg_intertwiner_components();
  const double target = -std::sqrt(3.0) / 4.0;
  LQGConstants unit;
  unit.unit_prefactor = true;
  r.facts = {{"volume operator nodes", std::to_string(v2.nodes().size())},
             {"eigenvalue", e.eigenvalue},
             {"|eigenvalue|", std::abs(e.eigenvalue)},
             {"target", target},
             {"eigenvalue / target", e.phase_to_target},
             {"component on (0,0) tree", comp[0]},
             {"component on (1,1) tree", comp[1]},
             {"area eigenvalue j=1/2 (unit prefactor)", area_eigenvalue(SpinLabel(1), unit)}};
  const std::string anchor = "minimal volume eigenvalue -sqrt(3)/4";
  r.checks.push_back({"operator diagram", "volume operator equals the Pauli sum",
                      Check::Kind::kAtMost, op_residual, kStrict, 1, {}});
  r.checks.push_back(
      {"eigen residual", anchor, Check::Kind::kAtMost, e.residual, tol, 1, {}});
  r.checks.push_back({"|eigenvalue|", anchor, Check::Kind::kAtMost,
                      std::abs(std::abs(e.eigenvalue) - std::abs(target)), tol, 1, {}});
  Check phase{"unit phase to target", anchor, Check::Kind::kAtMost,
              std::abs(std::abs(e.phase_to_target) - 1.0), tol, 1, {}};
  phase.note = "eigenvalue = target x " + format_complex(e.phase_to_target);
  r.checks.push_back(phase);
  r.seconds = clock.seconds();
  return r;
}

}  // namespace spinzx
