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

#ifndef SPINZX_REWRITE_HPP
#define SPINZX_REWRITE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "spinzx/diagram.hpp"
#include "spinzx/eval.hpp"

namespace spinzx {

// Where a rule matched: host node ids in pattern order plus the wires the
// pattern touches. `fingerprint` identifies the host diagram the site was
// found in.
struct MatchSite {
  std::vector<int> nodes;
  std::vector<int> wires;
  std::vector<int> groups;
  std::uint64_t fingerprint = 0;
  std::string summary() const;
};

// One left-hand-side instance used for certification, with a printable
// description of the dims and parameters it was drawn with.
struct RuleSample {
  std::string binding;
  Diagram lhs;
};

// A rule is a matcher, a rewriter and a sampler of left-hand sides. The
// sampler is what certification runs: every site of every sample is
// rewritten and both sides are evaluated.
struct RewriteRule {
  std::string name;
  std::string anchor;
  std::function<std::vector<MatchSite>(const Diagram&)> match;
  std::function<Diagram(const Diagram&, const MatchSite&)> rewrite;
  std::function<std::vector<RuleSample>(std::mt19937_64&)> samples;
  // Rules that may grow the diagram are left out of automatic strategies.
  bool expanding = false;
};

struct CertificationConfig {
  double tolerance = 1e-9;
  std::uint64_t seed = 20260101;
};

struct CertificationReport {
  int samples = 0;
  int sites = 0;
};

class CertifiedRule {
 public:
  const RewriteRule& rule() const { return rule_; }
  const std::string& name() const { return rule_.name; }
  const CertificationReport& report() const { return report_; }

 private:
  friend CertifiedRule certify(RewriteRule rule, const CertificationConfig& config);
  CertifiedRule(RewriteRule rule, CertificationReport report)
      : rule_(std::move(rule)), report_(report) {}
  RewriteRule rule_;
  CertificationReport report_;
};

// Runs the certification grid; throws SoundnessFailure on the first
// counterexample.
CertifiedRule certify(RewriteRule rule, const CertificationConfig& config = {});

class RuleRegistry {
 public:
  const CertifiedRule& register_rule(RewriteRule rule,
                                     const CertificationConfig& config = {});
  const CertifiedRule* find(const std::string& name) const;
  const CertifiedRule& at(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<std::unique_ptr<CertifiedRule>> rules_;
};

// Built-in rule definitions, before certification.
std::vector<RewriteRule> builtin_rule_definitions();
// Registry holding every built-in rule, certified on first use.
const RuleRegistry& builtin_rules();

// All sites of the rule in `d`, sorted lexicographically by node ids.
std::vector<MatchSite> find_matches(const Diagram& d, const CertifiedRule& rule);

struct ApplyOptions {
  // Evaluate both sides and throw SoundnessFailure on disagreement.
  bool verify = false;
  EvalConfig eval = {};
};

// Throws StaleSite when `site` was not found in this exact diagram.
Diagram apply_rule(const Diagram& d, const CertifiedRule& rule, const MatchSite& site,
                   const ApplyOptions& options = {});

enum class Strategy { kFuse, kSpin, kFull };
Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);
// Rule names used by a strategy, in priority order.
std::vector<std::string> strategy_rules(Strategy s);

struct TraceEntry {
  int step = 0;
  std::string rule;
  std::string site;
  std::string str() const;
};

struct SimplifyResult {
  Diagram diagram;
  std::vector<TraceEntry> trace;
  bool reached_cap = false;
};

SimplifyResult simplify(const Diagram& d, Strategy strategy, int max_steps = 1000,
                        const RuleRegistry& registry = builtin_rules());

}  // namespace spinzx

#endif  // SPINZX_REWRITE_HPP
