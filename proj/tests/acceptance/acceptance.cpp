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

// Acceptance run: one PASS/FAIL line per criterion. Pass --verbose to list
// every underlying check; failing checks are always listed.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "spinzx/errors.hpp"
#include "spinzx/suites.hpp"

namespace {

using spinzx::Check;

struct Criterion {
  int id;
  std::string title;
  double time_limit;
  std::function<std::vector<Check>()> run;
};

std::vector<Check> all_checks(const std::vector<spinzx::SuiteReport>& suites,
                              const std::vector<spinzx::DemoReport>& demos) {
  std::vector<Check> out;
  for (const auto& s : suites) out.insert(out.end(), s.checks.begin(), s.checks.end());
  for (const auto& d : demos) out.insert(out.end(), d.checks.begin(), d.checks.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "--verbose";
  const spinzx::SuiteConfig config;
  const std::vector<Criterion> criteria = {
      {1, "PQC amplitude", 1.0, [&] { return spinzx::demo_pqc(config).checks; }},
      {2, "LQG minimal volume", 1.0, [&] { return spinzx::demo_lqg(config).checks; }},
      {3, "3jm grand cross-check", 60.0, [&] { return spinzx::verify_threej(config).checks; }},
      {4, "symmetriser suite", 60.0, [&] { return spinzx::verify_symmetriser(config).checks; }},
      {5, "Lie-algebra suite", 60.0, [&] { return spinzx::verify_lie(config).checks; }},
      {6, "AKLT chains N = 3..6", 30.0,
       [&] {
         std::vector<spinzx::DemoReport> demos;
         for (int n = 3; n <= 6; ++n) demos.push_back(spinzx::demo_aklt(n, config));
         return all_checks({}, demos);
       }},
      {7, "QML vertex gate and gradient variance", 60.0,
       [&] {
         spinzx::DemoOptions options;
         options.qml_qubits = 4;
         options.qml_layers = 2;
         return all_checks({spinzx::verify_vertex_gate(config)},
                           {spinzx::demo_qml(options, config)});
       }},
      {8, "rewrite soundness", 120.0, [&] { return spinzx::verify_rules(config).checks; }},
      {9, "binor layer", 10.0, [&] { return spinzx::verify_binor(config).checks; }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    std::string error;
    try {
      checks = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool checks_ok =
        error.empty() && !checks.empty() &&
        std::all_of(checks.begin(), checks.end(), [](const Check& k) { return k.pass(); });
    const bool time_ok = seconds < c.time_limit;
    const bool ok = checks_ok && time_ok;
    if (!ok) ++failures;
    int cases = 0;
    for (const Check& k : checks) cases += k.cases;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu checks, %d cases, %.3f s (limit %.0f s)", checks.size(),
                  cases, seconds, c.time_limit);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << buf;
    if (!time_ok) std::cout << " [time limit exceeded]";
    if (!error.empty()) std::cout << " [error: " << error << "]";
    std::cout << "\n";
    for (const Check& k : checks) {
      if (verbose || !k.pass()) std::cout << "    " << k.str() << "\n";
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
