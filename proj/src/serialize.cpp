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

#include "spinzx/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spinzx {

namespace {

using json = nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json endpoint_json(const Endpoint& e) {
  switch (e.type) {
    case Endpoint::Type::kPort:
      return {{"node", e.node}, {"port", e.index}};
    case Endpoint::Type::kInput:
      return {{"boundary", "in"}, {"pos", e.index}};
    case Endpoint::Type::kOutput:
      return {{"boundary", "out"}, {"pos", e.index}};
  }
  return {};
}

json node_json(int id, const Node& n) {
  json j = {{"id", id}, {"kind", kind_name(n.kind)}, {"n_in", n.n_in},
            {"n_out", n.n_out}};
  if (n.group >= 0) j["group"] = n.group;
  std::visit(overloaded{
                 [&](const ZSpider& z) {
                   json p = json::array();
                   for (auto c : z.params) p.push_back(complex_json(c));
                   j["params"] = p;
                   if (n.arity() == 0) j["dim"] = z.dim;
                 },
                 [&](const XSpider& x) {
                   j["dim"] = x.dim;
                   j["phase"] = x.phase;
                 },
                 [&](const Hadamard& h) {
                   j["dim"] = h.dim;
                   j["dagger"] = h.dagger;
                 },
                 [&](const Dualiser& u) { j["dim"] = u.dim; },
                 [&](const WNode& w) {
                   j["dim"] = w.dim;
                   j["dagger"] = w.dagger;
                 },
                 [&](const Triangle& t) {
                   j["dim"] = t.dim;
                   j["dagger"] = t.dagger;
                 },
                 [&](const DimSplit& s) {
                   j["dims"] = {s.d1, s.d2};
                   j["dagger"] = s.dagger;
                 },
                 [&](const MatrixBox& m) {
                   j["in_dims"] = m.in_dims;
                   j["out_dims"] = m.out_dims;
                   json rows = json::array();
                   for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
                     json row = json::array();
                     for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
                       row.push_back(complex_json(m.entries(r, c)));
                     }
                     rows.push_back(row);
                   }
                   j["matrix"] = rows;
                 },
             },
             n.kind);
  return j;
}

Complex read_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError("complex number must be [re, im]");
  }
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Endpoint read_endpoint(const json& j) {
  if (j.contains("node")) {
    return Endpoint::port(j.at("node").get<int>(), j.at("port").get<int>());
  }
  const std::string side = j.at("boundary").get<std::string>();
  const int pos = j.at("pos").get<int>();
  if (side == "in") return Endpoint::input(pos);
  if (side == "out") return Endpoint::output(pos);
  throw ValidationError("boundary side must be \"in\" or \"out\", got \"" +
                        side + "\"");
}

NodeKind read_kind(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  auto dagger = [&] { return j.value("dagger", false); };
  if (kind == "z") {
    ZSpider z;
    for (const auto& c : j.value("params", json::array())) {
      z.params.push_back(read_complex(c));
    }
    z.dim = j.value("dim", 0);
    return z;
  }
  if (kind == "x") return XSpider{j.at("dim").get<int>(), j.value("phase", 0)};
  if (kind == "h") return Hadamard{j.at("dim").get<int>(), dagger()};
  if (kind == "du") return Dualiser{j.at("dim").get<int>()};
  if (kind == "w") return WNode{j.at("dim").get<int>(), dagger()};
  if (kind == "triangle") return Triangle{j.at("dim").get<int>(), dagger()};
  if (kind == "split") {
    const auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() != 2) throw ValidationError("split needs two dims");
    return DimSplit{dims[0], dims[1], dagger()};
  }
  if (kind == "matrix") {
    MatrixBox m;
    m.in_dims = j.at("in_dims").get<std::vector<int>>();
    m.out_dims = j.at("out_dims").get<std::vector<int>>();
    const json& rows = j.at("matrix");
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    const auto n_cols =
        n_rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.at(0).size());
    m.entries = Matrix::Zero(n_rows, n_cols);
    for (Eigen::Index r = 0; r < n_rows; ++r) {
      const json& row = rows.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != n_cols) {
        throw ValidationError("matrix rows have different lengths");
      }
      for (Eigen::Index c = 0; c < n_cols; ++c) {
        m.entries(r, c) = read_complex(row.at(static_cast<std::size_t>(c)));
      }
    }
    return m;
  }
  throw UnsupportedKind("unknown node kind \"" + kind + "\"");
}

void line_column(const std::string& text, std::size_t byte, int* line,
                 int* column) {
  *line = 1;
  *column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++*line;
      *column = 1;
    } else {
      ++*column;
    }
  }
}

}  // namespace

std::string serialize(const Diagram& d, int indent) {
  json j;
  json nodes = json::array();
  for (const auto& [id, n] : d.nodes()) nodes.push_back(node_json(id, n));
  j["nodes"] = nodes;
  json wires = json::array();
  for (const auto& w : d.wires()) {
    wires.push_back(
        {{"a", endpoint_json(w.a)}, {"b", endpoint_json(w.b)}, {"dim", w.dim}});
  }
  j["wires"] = wires;
  json inputs = json::array();
  for (int i = 0; i < d.n_inputs(); ++i) {
    inputs.push_back({{"boundary", "in"}, {"pos", i}, {"dim", d.input_dims()[i]}});
  }
  json outputs = json::array();
  for (int i = 0; i < d.n_outputs(); ++i) {
    outputs.push_back(
        {{"boundary", "out"}, {"pos", i}, {"dim", d.output_dims()[i]}});
  }
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["scalar"] = complex_json(d.scalar());
  if (!d.groups().empty()) {
    json groups = json::array();
    for (const auto& [gid, g] : d.groups()) {
      json gi = json::array();
      json go = json::array();
      for (const auto& e : g.inputs) gi.push_back(endpoint_json(e));
      for (const auto& e : g.outputs) go.push_back(endpoint_json(e));
      groups.push_back({{"id", gid},
                        {"label", g.label},
                        {"size", g.size},
                        {"inputs", gi},
                        {"outputs", go}});
    }
    j["groups"] = groups;
  }
  return j.dump(indent);
}

Diagram deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 0;
    int column = 0;
    line_column(text, e.byte == 0 ? 0 : e.byte - 1, &line, &column);
    throw ParseError("malformed .zxd text: " + std::string(e.what()), line,
                     column);
  }
  try {
    if (!j.is_object()) throw ValidationError("top level must be an object");
    Diagram d;
    std::map<int, int> id_map;
    for (const auto& nj : j.at("nodes")) {
      const int id = nj.at("id").get<int>();
      if (id_map.count(id)) {
        throw ValidationError("duplicate node id " + std::to_string(id));
      }
      id_map[id] = -1;
    }
    // Node ids in the file may be sparse; they are mapped in ascending order.
    std::vector<std::pair<int, const json*>> ordered;
    for (const auto& nj : j.at("nodes")) {
      ordered.emplace_back(nj.at("id").get<int>(), &nj);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::map<int, int> group_of;
    for (const auto& [id, nj] : ordered) {
      const int fresh = d.add_node(read_kind(*nj), nj->value("n_in", 0),
                                   nj->value("n_out", 0));
      id_map[id] = fresh;
      if (nj->contains("group")) group_of[fresh] = nj->at("group").get<int>();
    }
    auto remap = [&](Endpoint e) {
      if (e.is_port()) {
        auto it = id_map.find(e.node);
        if (it == id_map.end()) {
          throw ValidationError("wire refers to missing node " +
                                std::to_string(e.node));
        }
        e.node = it->second;
      }
      return e;
    };
    for (const auto& key : {"inputs", "outputs"}) {
      const json& list = j.at(key);
      for (std::size_t i = 0; i < list.size(); ++i) {
        const json& b = list.at(i);
        if (b.value("pos", static_cast<int>(i)) != static_cast<int>(i)) {
          throw ValidationError(std::string(key) +
                                " must be listed in position order");
        }
        const int dim = b.at("dim").get<int>();
        if (std::string(key) == "inputs") {
          d.add_input(dim);
        } else {
          d.add_output(dim);
        }
      }
    }
    for (const auto& wj : j.at("wires")) {
      d.connect(remap(read_endpoint(wj.at("a"))), remap(read_endpoint(wj.at("b"))),
                wj.at("dim").get<int>());
    }
    if (j.contains("scalar")) d.set_scalar(read_complex(j.at("scalar")));
    if (j.contains("groups")) {
      std::map<int, int> gid_map;
      for (const auto& gj : j.at("groups")) {
        Group g;
        g.label = gj.at("label").get<std::string>();
        g.size = gj.value("size", 0);
        for (const auto& e : gj.at("inputs")) g.inputs.push_back(remap(read_endpoint(e)));
        for (const auto& e : gj.at("outputs")) g.outputs.push_back(remap(read_endpoint(e)));
        auto& groups = d.mutable_groups();
        const int fresh = groups.empty() ? 0 : groups.rbegin()->first + 1;
        groups.emplace(fresh, g);
        gid_map[gj.at("id").get<int>()] = fresh;
      }
      for (const auto& [node, gid] : group_of) {
        auto it = gid_map.find(gid);
        if (it == gid_map.end()) {
          throw ValidationError("node refers to missing group " +
                                std::to_string(gid));
        }
        d.mutable_node(node).group = it->second;
      }
    } else if (!group_of.empty()) {
      throw ValidationError("node refers to a group but no groups are listed");
    }
    d.finish();
    return d;
  } catch (const json::exception& e) {
    throw ValidationError("invalid .zxd structure: " + std::string(e.what()));
  }
}

Diagram read_zxd_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str());
}

void write_zxd_file(const Diagram& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << serialize(d) << "\n";
}

std::string to_dot(const Diagram& d) {
  std::ostringstream os;
  os << "graph diagram {\n  rankdir=TB;\n";
  for (int i = 0; i < d.n_inputs(); ++i) {
    os << "  in" << i << " [shape=point,label=\"\"];\n";
  }
  for (int i = 0; i < d.n_outputs(); ++i) {
    os << "  out" << i << " [shape=point,label=\"\"];\n";
  }
  for (const auto& [id, n] : d.nodes()) {
    std::string style;
    std::string label = kind_name(n.kind);
    std::visit(overloaded{
                   [&](const ZSpider&) {
                     style = "shape=circle,style=filled,fillcolor=\"#ccffcc\"";
                   },
                   [&](const XSpider& x) {
                     style = "shape=circle,style=filled,fillcolor=\"#ffcccc\"";
                     if (x.phase != 0) label += " " + std::to_string(x.phase);
                   },
                   [&](const Hadamard& h) {
                     style = "shape=square,style=filled,fillcolor=\"#ffff88\"";
                     if (h.dagger) label += "+";
                   },
                   [&](const auto&) { style = "shape=box"; },
               },
               n.kind);
    os << "  n" << id << " [" << style << ",label=\"" << label << "\"];\n";
  }
  auto name = [](const Endpoint& e) {
    switch (e.type) {
      case Endpoint::Type::kPort:
        return "n" + std::to_string(e.node);
      case Endpoint::Type::kInput:
        return "in" + std::to_string(e.index);
      case Endpoint::Type::kOutput:
        return "out" + std::to_string(e.index);
    }
    return std::string();
  };
  for (const auto& w : d.wires()) {
    os << "  " << name(w.a) << " -- " << name(w.b) << " [label=\"" << w.dim
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace spinzx
