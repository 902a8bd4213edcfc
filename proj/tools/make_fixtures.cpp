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

// Regenerates the diagram fixtures and their expected-value manifest.
// Usage: spinzx_fixtures <output-dir>

#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "spinzx/applications.hpp"
#include "spinzx/diagram.hpp"
#include "spinzx/serialize.hpp"
#include "spinzx/spin.hpp"

namespace {

using spinzx::Complex;
using spinzx::Diagram;

Diagram pqc_demo() {
  const Diagram network = spinzx::pqc_network(spinzx::pqc_example_bra(), spinzx::pqc_example_ket(),
                                              spinzx::pqc_example_perm());
  // Normalise by the product of the tree-state norms, sqrt(3/2 * 2).
  return spinzx::scaled(network, 1.0 / std::sqrt(3.0));
}

Diagram fused_chain() {
  using spinzx::z_spider;
  const std::vector<Complex> a = {Complex(0.5, 0.25), Complex(-1.0, 0.5)};
  const std::vector<Complex> b = {Complex(2.0, 0.0), Complex(0.0, 1.0)};
  const std::vector<Complex> c = {Complex(0.0, -1.0), Complex(1.5, 0.0)};
  return spinzx::compose({z_spider(1, 1, 3, a), z_spider(1, 1, 3), z_spider(1, 2, 3, b),
                          z_spider(2, 1, 3), z_spider(1, 1, 3, c), spinzx::hadamard(3),
                          spinzx::hadamard(3, true)});
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: spinzx_fixtures <output-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  spinzx::write_zxd_file(spinzx::identity(2), dir + "/identity.zxd");
  spinzx::write_zxd_file(pqc_demo(), dir + "/pqc_demo.zxd");
  spinzx::write_zxd_file(fused_chain(), dir + "/fused_chain.zxd");
  spinzx::write_zxd_file(spinzx::compose(spinzx::binor_cap(), spinzx::binor_cup()),
                         dir + "/binor_loop.zxd");
  std::ofstream(dir + "/malformed.zxd") << "{\n  \"nodes\": [\n    {\"id\": 0, \"kind\": }\n";

  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  manifest.push_back({{"name", "pqc_demo"},
                      {"expected", {std::sqrt(3.0) / 2.0, 0.0}},
                      {"tolerance", 1e-9},
                      {"paper_anchor", "PQC transition amplitude sqrt(3)/2"}});
  manifest.push_back({{"name", "binor_loop"},
                      {"expected", {-2.0, 0.0}},
                      {"tolerance", 1e-12},
                      {"paper_anchor", "closed binor loop equals -2"}});
  std::ofstream(dir + "/manifest.json") << manifest.dump(2) << "\n";
  return 0;
}
