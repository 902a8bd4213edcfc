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
#include <random>

#include "spinzx/errors.hpp"
#include "spinzx/eval.hpp"
#include "spinzx/rewrite.hpp"
#include "spinzx/spin.hpp"
#include "spinzx/suites.hpp"

namespace spinzx {
namespace {

constexpr double kTol = 1e-9;

const CertifiedRule& rule(const std::string& name) { return builtin_rules().at(name); }

void expect_same_tensor(const Diagram& a, const Diagram& b) {
  const Tensor ta = evaluate(a);
  const Tensor tb = evaluate(b);
  ASSERT_EQ(ta.shape(), tb.shape());
  EXPECT_LT(max_abs_diff(ta, tb), kTol);
}

Diagram z_chain(int n, Dim dim, std::vector<Complex> params = {}) {
  std::vector<Diagram> parts;
  for (int i = 0; i < n; ++i) parts.push_back(z_spider(1, 1, dim, params));
  return compose(parts);
}

TEST(Certification, EveryBuiltinRuleCertifies) {
  const auto defs = builtin_rule_definitions();
  const RuleRegistry& reg = builtin_rules();
  ASSERT_EQ(reg.names().size(), defs.size());
  for (const auto& def : defs) {
    const CertifiedRule& r = reg.at(def.name);
    EXPECT_GT(r.report().samples, 0) << def.name;
    EXPECT_GE(r.report().sites, r.report().samples) << def.name;
    EXPECT_FALSE(r.rule().anchor.empty()) << def.name;
  }
}

TEST(Certification, FusionGridCoversAllDimTriples) {
  // 27 dim triples and 9 parallel-wire pairs, five draws each.
  EXPECT_EQ(rule("s1_z_fusion").report().samples, (27 + 9) * 5);
}

TEST(Certification, WrongFusionIsRejected) {
  RewriteRule bad = builtin_rule_definitions()[0];
  ASSERT_EQ(bad.name, "s1_z_fusion");
  bad.name = "additive_fusion";
  const auto good_rewrite = bad.rewrite;
  bad.rewrite = [good_rewrite](const Diagram& host, const MatchSite& site) {
    Diagram d = good_rewrite(host, site);
    // Replace the product by a sum of the two parameter vectors.
    const auto* za = std::get_if<ZSpider>(&host.node(site.nodes[0]).kind);
    const auto* zb = std::get_if<ZSpider>(&host.node(site.nodes[1]).kind);
    for (auto& [id, node] : d.mutable_nodes()) {
      if (auto* z = std::get_if<ZSpider>(&node.kind)) {
        for (std::size_t i = 0; i < z->params.size(); ++i) {
          const Complex a = i < za->params.size() ? za->params[i] : Complex(0.0);
          const Complex b = i < zb->params.size() ? zb->params[i] : Complex(0.0);
          z->params[i] = a + b;
        }
      }
    }
    return d;
  };
  try {
    certify(bad);
    FAIL() << "expected SoundnessFailure";
  } catch (const SoundnessFailure& e) {
    EXPECT_EQ(e.rule(), "additive_fusion");
    EXPECT_FALSE(e.binding().empty());
    EXPECT_GT(e.max_diff(), 1e-6);
    EXPECT_FALSE(e.lhs_tensor().empty());
    EXPECT_EQ(e.lhs_tensor().size(), e.rhs_tensor().size());
  }
}

TEST(Certification, RuleWithoutMatchesIsRejected) {
  RewriteRule r = builtin_rule_definitions()[0];
  r.name = "never_matches";
  r.match = [](const Diagram&) { return std::vector<MatchSite>{}; };
  EXPECT_THROW(certify(r), SoundnessFailure);
}

TEST(Certification, DuplicateNameIsRejected) {
  RuleRegistry reg;
  reg.register_rule(builtin_rule_definitions()[3]);
  EXPECT_THROW(reg.register_rule(builtin_rule_definitions()[3]), Error);
  EXPECT_EQ(reg.names().size(), 1u);
}

TEST(Matching, FusionOnFourSpiderChainHasThreeSites) {
  const Diagram d = z_chain(4, 3, {Complex(0.5), Complex(0.0, 1.0)});
  const auto sites = find_matches(d, rule("s1_z_fusion"));
  ASSERT_EQ(sites.size(), 3u);
  for (std::size_t i = 1; i < sites.size(); ++i) {
    EXPECT_LT(sites[i - 1].nodes, sites[i].nodes);
  }
}

TEST(Matching, IdentityRemovalFindsTheTrivialSpider) {
  const Diagram d = compose({z_spider(1, 1, 2, {Complex(0.3)}), z_spider(1, 1, 2),
                             z_spider(1, 1, 2, {Complex(-0.7)})});
  EXPECT_EQ(find_matches(d, rule("s2_identity")).size(), 1u);
}

TEST(Matching, QuditOnlyPatternMissesQubitDiagram) {
  // Hand-built rule whose pattern needs a dim-3 Z spider.
  RewriteRule r = builtin_rule_definitions()[2];
  const auto inner = r.match;
  r.match = [inner](const Diagram& d) {
    std::vector<MatchSite> out;
    for (const MatchSite& s : inner(d)) {
      if (d.leg_dims(s.nodes[0])[0] == 3) out.push_back(s);
    }
    return out;
  };
  const CertifiedRule& id = rule("s2_identity");
  const Diagram qubits = z_chain(3, 2);
  EXPECT_EQ(find_matches(qubits, id).size(), 3u);
  EXPECT_TRUE(r.match(qubits).empty());
  EXPECT_EQ(r.match(z_chain(2, 3)).size(), 2u);
}

TEST(Matching, SitesCarryTheHostFingerprint) {
  const Diagram d = z_chain(3, 2, {Complex(0.5)});
  for (const auto& s : find_matches(d, rule("s1_z_fusion"))) {
    EXPECT_EQ(s.fingerprint, d.fingerprint());
  }
}

TEST(Apply, FusionPreservesTheTensor) {
  const Diagram d = compose(z_spider_mixed({3}, {4, 2}, {Complex(0.2, 0.1)}),
                            z_spider_mixed({4, 2}, {3}, {Complex(0.9)}));
  const auto sites = find_matches(d, rule("s1_z_fusion"));
  ASSERT_EQ(sites.size(), 1u);
  const Diagram after = apply_rule(d, rule("s1_z_fusion"), sites[0], {true});
  EXPECT_EQ(after.nodes().size(), 1u);
  expect_same_tensor(d, after);
}

TEST(Apply, ScalarEliminationDropsOneNode) {
  const Diagram d = tensor(z_spider(0, 0, 3, {Complex(2.0), Complex(0.5)}),
                           hadamard(2));
  const auto sites = find_matches(d, rule("ept_scalar"));
  ASSERT_EQ(sites.size(), 1u);
  const Diagram after = apply_rule(d, rule("ept_scalar"), sites[0]);
  EXPECT_EQ(after.nodes().size(), d.nodes().size() - 1);
  expect_same_tensor(d, after);
  EXPECT_NEAR(std::abs(after.scalar() - Complex(3.5)), 0.0, kTol);
}

TEST(Apply, StaleSiteIsRejected) {
  const Diagram d = z_chain(3, 2, {Complex(0.5)});
  const auto sites = find_matches(d, rule("s1_z_fusion"));
  const Diagram once = apply_rule(d, rule("s1_z_fusion"), sites[0]);
  EXPECT_THROW(apply_rule(once, rule("s1_z_fusion"), sites[1]), StaleSite);
}

TEST(Apply, SymmetriserStackingAbsorbsInnerS3) {
  const Diagram inner = tensor(symmetriser(3), identity_wires({2, 2, 2}));
  const Diagram d = compose(inner, symmetriser(6));
  const auto sites = find_matches(d, rule("sym_stacking"));
  ASSERT_EQ(sites.size(), 1u);
  const Diagram after = apply_rule(d, rule("sym_stacking"), sites[0], {true});
  EXPECT_EQ(after.groups().size(), 1u);
  EXPECT_EQ(after.groups().begin()->second.size, 6);
  EXPECT_EQ(after, symmetriser(6));
}

TEST(Apply, SingletOnSymmetriserIsZero) {
  const Diagram d = compose(symmetriser(3), tensor(singlet_effect(), identity(2)));
  const auto sites = find_matches(d, rule("singlet_capping"));
  ASSERT_EQ(sites.size(), 1u);
  const Diagram after = apply_rule(d, rule("singlet_capping"), sites[0], {true});
  EXPECT_EQ(after.scalar(), Complex(0.0));
}

TEST(Apply, ColourChangeAndBialgebraAreSound) {
  const Diagram x = compose(x_spider(1, 2, 3, 1), tensor(z_spider(1, 1, 3, {Complex(0.3), Complex(-1.0)}),
                                                       identity(3)));
  for (const auto& s : find_matches(x, rule("hz_colour_change"))) {
    expect_same_tensor(x, apply_rule(x, rule("hz_colour_change"), s));
  }
  const Diagram b = compose(z_spider(2, 1, 2), x_spider(1, 2, 2));
  const auto sites = find_matches(b, rule("b2_bialgebra"));
  ASSERT_EQ(sites.size(), 1u);
  const Diagram after = apply_rule(b, rule("b2_bialgebra"), sites[0]);
  EXPECT_EQ(after.nodes().size(), 4u);
  expect_same_tensor(b, after);
}

TEST(Simplify, FiveSpiderChainFusesToOne) {
  const Diagram d = z_chain(5, 3, {Complex(1.0), Complex(1.0)});
  const SimplifyResult r = simplify(d, Strategy::kFuse);
  EXPECT_LE(r.diagram.nodes().size(), 1u);
  EXPECT_FALSE(r.reached_cap);
  expect_same_tensor(d, r.diagram);
  const Diagram p = z_chain(5, 3, {Complex(0.5), Complex(0.0, 2.0)});
  const SimplifyResult rp = simplify(p, Strategy::kFuse);
  EXPECT_EQ(rp.diagram.nodes().size(), 1u);
  expect_same_tensor(p, rp.diagram);
}

TEST(Simplify, FuseStrictlyShrinks) {
  const Diagram d = compose({z_spider(1, 2, 2, {Complex(0.4)}), tensor(hadamard(2), hadamard(2, true)),
                             tensor(dualiser(2), x_spider(1, 1, 2, 1)), x_spider(2, 1, 2),
                             x_spider(1, 1, 2)});
  SimplifyResult r = simplify(d, Strategy::kFuse);
  expect_same_tensor(d, r.diagram);
  Diagram cur = d;
  for (const auto& t : r.trace) {
    const CertifiedRule& rr = rule(t.rule);
    const auto sites = find_matches(cur, rr);
    ASSERT_FALSE(sites.empty());
    Diagram next;
    for (const auto& s : sites) {
      if (s.summary() == t.site) next = apply_rule(cur, rr, s);
    }
    const auto before = std::make_pair(cur.nodes().size(), cur.wires().size());
    const auto after = std::make_pair(next.nodes().size(), next.wires().size());
    EXPECT_LT(after, before) << t.str();
    cur = next;
  }
  EXPECT_EQ(cur, r.diagram);
}

TEST(Simplify, SymmetriserSquaredIsOneSymmetriser) {
  const Diagram d = compose(symmetriser(2), symmetriser(2));
  const SimplifyResult r = simplify(d, Strategy::kSpin);
  EXPECT_EQ(r.diagram, symmetriser(2));
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].rule, "sym_idempotence");
  EXPECT_EQ(r.trace[0].str().rfind("step 1: sym_idempotence @ ", 0), 0u);
}

TEST(Simplify, StackedSymmetrisersCollapse) {
  const Diagram d = compose({tensor(symmetriser(2), identity_wires({2, 2})),
                             tensor(identity(2), symmetriser(3)),
                             symmetriser(4), symmetriser(4)});
  const SimplifyResult r = simplify(d, Strategy::kSpin);
  EXPECT_EQ(r.diagram, symmetriser(4));
  expect_same_tensor(d, r.diagram);
}

TEST(Simplify, StepCapIsReported) {
  const Diagram d = z_chain(6, 2, {Complex(0.5)});
  const SimplifyResult r = simplify(d, Strategy::kFuse, 2);
  EXPECT_EQ(r.trace.size(), 2u);
  EXPECT_TRUE(r.reached_cap);
  expect_same_tensor(d, r.diagram);
}

TEST(Simplify, TraceIsDeterministic) {
  const Diagram d = compose({three_j_state(SpinTriple{SpinLabel(1), SpinLabel(1), SpinLabel(2)}),
                             adjoint(three_j_state(SpinTriple{SpinLabel(1), SpinLabel(1), SpinLabel(2)}))});
  const SimplifyResult a = simplify(d, Strategy::kFull);
  const SimplifyResult b = simplify(d, Strategy::kFull);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(a.trace[i].str(), b.trace[i].str());
  EXPECT_EQ(a.diagram, b.diagram);
  EXPECT_TRUE(a.diagram.nodes().empty());
  EXPECT_NEAR(std::abs(a.diagram.scalar() - evaluate_scalar(d)), 0.0, kTol);
}

TEST(Simplify, FullClosesScalarDiagrams) {
  std::mt19937_64 rng(3);
  const Diagram d = compose({magnetic_state(SpinLabel(2), MagneticLabel(0)),
                             wigner_diagram(SpinLabel(2), random_su2(rng)),
                             adjoint(magnetic_state(SpinLabel(2), MagneticLabel(2)))});
  const SimplifyResult r = simplify(d, Strategy::kFull);
  EXPECT_TRUE(r.diagram.nodes().empty());
  EXPECT_NEAR(std::abs(r.diagram.scalar() - evaluate_scalar(d)), 0.0, kTol);
}

TEST(Simplify, ParseStrategyNames) {
  EXPECT_EQ(parse_strategy("fuse"), Strategy::kFuse);
  EXPECT_EQ(parse_strategy("spin"), Strategy::kSpin);
  EXPECT_EQ(parse_strategy("full"), Strategy::kFull);
  EXPECT_EQ(strategy_name(Strategy::kSpin), "spin");
  EXPECT_THROW(parse_strategy("fast"), Error);
  for (const auto& n : strategy_rules(Strategy::kFull)) {
    EXPECT_FALSE(rule(n).rule().expanding) << n;
  }
}

TEST(Soundness, ThousandRandomApplications) {
  std::mt19937_64 rng(7);
  int applied = 0;
  std::vector<const CertifiedRule*> rules;
  for (const auto& n : builtin_rules().names()) rules.push_back(&rule(n));
  int attempts = 0;
  while (applied < 1000 && attempts < 20000) {
    ++attempts;
    const Diagram d = random_small_diagram(rng);
    for (const CertifiedRule* r : rules) {
      for (const auto& s : find_matches(d, *r)) {
        ApplyOptions opts;
        opts.verify = true;
        EXPECT_NO_THROW(apply_rule(d, *r, s, opts)) << r->name() << " " << s.summary();
        ++applied;
      }
    }
  }
  EXPECT_GE(applied, 1000);
}

}  // namespace
}  // namespace spinzx
