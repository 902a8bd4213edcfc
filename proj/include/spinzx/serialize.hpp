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

#ifndef SPINZX_SERIALIZE_HPP
#define SPINZX_SERIALIZE_HPP

#include <string>

#include "spinzx/diagram.hpp"

namespace spinzx {

// The .zxd text format is JSON:
//
//   {"nodes":   [{"id": 0, "kind": "z", "n_in": 1, "n_out": 1,
//                 "params": [[re, im], ...]}, ...],
//    "wires":   [{"a": endpoint, "b": endpoint, "dim": 3}, ...],
//    "inputs":  [{"boundary": "in", "pos": 0, "dim": 3}, ...],
//    "outputs": [{"boundary": "out", "pos": 0, "dim": 3}, ...],
//    "scalar":  [re, im]}
//
// An endpoint is {"node": id, "port": p} or {"boundary": "in"|"out",
// "pos": k}. Optional "groups" and per-node "group" fields carry the
// composite labels used by the rewrite engine.
std::string serialize(const Diagram& d, int indent = 1);

// Throws ParseError (with line and column) on malformed text and
// ValidationError or one of its siblings when the text parses but does not
// describe a valid diagram.
Diagram deserialize(const std::string& text);

Diagram read_zxd_file(const std::string& path);
void write_zxd_file(const Diagram& d, const std::string& path);

// Graphviz rendering.
std::string to_dot(const Diagram& d);

}  // namespace spinzx

#endif  // SPINZX_SERIALIZE_HPP
