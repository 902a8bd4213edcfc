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

#ifndef SPINZX_SUITES_HPP
#define SPINZX_SUITES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "spinzx/diagram.hpp"
#include "spinzx/eval.hpp"

namespace spinzx {

// One verified property. An upper-bound check passes when the largest
// residual is at most `bound`; a lower-bound check passes when the smallest
// observed value is at least `bound` (used for "must be nonzero").
struct Check {
  enum class Kind { kAtMost, kAtLeast };
  std::string name;
  std::string anchor;
  Kind kind = Kind::kAtMost;
  double value = 0.0;
  double bound = 0.0;
  int cases = 0;
  std::string note;
  bool pass() const { return kind == Kind::kAtMost ? value <= bound : value >= bound; }
  std::string str() const;
};

struct SuiteConfig {
  double tolerance = 1e-9;
  std::uint64_t seed = 42;
  EvalConfig eval = {};
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
};

// Suites: rules, symmetriser, threej, lie, binor, vertex.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& config = {});

SuiteReport verify_rules(const SuiteConfig& config = {});
SuiteReport verify_symmetriser(const SuiteConfig& config = {});
SuiteReport verify_threej(const SuiteConfig& config = {});
SuiteReport verify_lie(const SuiteConfig& config = {});
SuiteReport verify_binor(const SuiteConfig& config = {});
SuiteReport verify_vertex_gate(const SuiteConfig& config = {});

// Random small diagram of Z, X, H and Du nodes on one or two wires of
// dimension 2 or 3, optionally with a closed scalar component.
Diagram random_small_diagram(std::mt19937_64& rng);

// A printable demo quantity.
struct Fact {
  std::string key;
  std::variant<std::string, double, Complex> value;
  std::string str() const;
};

struct DemoReport {
  std::string demo;
  std::vector<Fact> facts;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
};

struct DemoOptions {
  int aklt_sites = 4;
  int qml_qubits = 4;
  int qml_layers = 2;
  int qml_samples = 2000;
};

// Demos: pqc, aklt, qml, lqg.
std::vector<std::string> demo_names();
DemoReport run_demo(const std::string& name, const DemoOptions& options = {},
                    const SuiteConfig& config = {});

DemoReport demo_pqc(const SuiteConfig& config = {});
DemoReport demo_aklt(int sites, const SuiteConfig& config = {});
DemoReport demo_qml(const DemoOptions& options, const SuiteConfig& config = {});
DemoReport demo_lqg(const SuiteConfig& config = {});

}  // namespace spinzx

#endif  // SPINZX_SUITES_HPP
