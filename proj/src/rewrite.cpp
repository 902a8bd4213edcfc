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

#include "spinzx/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "spinzx/errors.hpp"
#include "spinzx/spin.hpp"

namespace spinzx {

namespace {

int mod(int a, int d) { return ((a % d) + d) % d; }

// ---------------------------------------------------------------------------
// Host inspection.

struct Leg {
  int port;
  int wire;
  Endpoint far;
  int dim;
};

std::vector<Leg> legs_of(const Diagram& d, int id) {
  const std::vector<int> ws = d.node_wires(id);
  std::vector<Leg> out;
  for (std::size_t p = 0; p < ws.size(); ++p) {
    const Wire& w = d.wires()[static_cast<std::size_t>(ws[p])];
    const Endpoint self = Endpoint::port(id, static_cast<int>(p));
    out.push_back({static_cast<int>(p), ws[p], w.a == self ? w.b : w.a, w.dim});
  }
  return out;
}

bool on_node(const Endpoint& e, int id) { return e.is_port() && e.node == id; }

bool has_self_loop(const std::vector<Leg>& legs, int id) {
  return std::any_of(legs.begin(), legs.end(),
                     [&](const Leg& l) { return on_node(l.far, id); });
}

bool is_free(const Diagram& d, int id) { return d.node(id).group < 0; }

template <typename T>
const T* kind_of(const Diagram& d, int id) {
  return std::get_if<T>(&d.node(id).kind);
}

bool is_input_port(const Diagram& d, const Endpoint& e) {
  return e.index < d.node(e.node).n_in;
}

int min_dim(const std::vector<Leg>& legs, int fallback) {
  int m = std::numeric_limits<int>::max();
  for (const Leg& l : legs) m = std::min(m, l.dim);
  return legs.empty() ? fallback : m;
}

// a_i of a Z spider: a_0 = 1, stored entries next, zero beyond.
Complex z_value(const ZSpider& z, int i) {
  if (i == 0) return 1.0;
  const auto k = static_cast<std::size_t>(i - 1);
  return k < z.params.size() ? z.params[k] : Complex(0.0);
}

bool all_ones(const ZSpider& z) {
  return std::all_of(z.params.begin(), z.params.end(),
                     [](const Complex& c) { return c == Complex(1.0); });
}

// ---------------------------------------------------------------------------
// Host editing. Every rewrite works on a copy and ends with finish().

void erase_nodes(Diagram& d, const std::set<int>& ids) {
  auto& ws = d.mutable_wires();
  ws.erase(std::remove_if(ws.begin(), ws.end(),
                          [&](const Wire& w) {
                            return (w.a.is_port() && ids.count(w.a.node)) ||
                                   (w.b.is_port() && ids.count(w.b.node));
                          }),
           ws.end());
  std::set<int> dropped_groups;
  for (int id : ids) {
    const int g = d.node(id).group;
    if (g >= 0) dropped_groups.insert(g);
  }
  for (int id : ids) d.mutable_nodes().erase(id);
  for (int g : dropped_groups) d.dissolve_group(g);
}

void erase_wire_indices(Diagram& d, std::vector<int> idx) {
  std::sort(idx.rbegin(), idx.rend());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (int w : idx) d.mutable_wires().erase(d.mutable_wires().begin() + w);
}

// Removes the given ports from a node and renumbers the rest. Their wires
// must already be gone.
void drop_ports(Diagram& d, int id, const std::set<int>& drop) {
  Node& n = d.mutable_node(id);
  std::map<int, int> remap;
  int next = 0;
  int new_in = 0;
  for (int p = 0; p < n.arity(); ++p) {
    if (drop.count(p)) continue;
    remap[p] = next++;
    if (p < n.n_in) ++new_in;
  }
  n.n_in = new_in;
  n.n_out = next - new_in;
  for (auto& w : d.mutable_wires()) {
    for (Endpoint* e : {&w.a, &w.b}) {
      if (on_node(*e, id)) e->index = remap.at(e->index);
    }
  }
}

// Replaces nodes a and b by one node stored under id a. Wires between a and
// b are removed; the listed (node, port) pairs become the new ports.
void merge_pair(Diagram& d, int a, int b, NodeKind kind,
                const std::vector<std::pair<int, int>>& ins,
                const std::vector<std::pair<int, int>>& outs) {
  std::map<std::pair<int, int>, int> remap;
  for (std::size_t i = 0; i < ins.size(); ++i) remap[ins[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < outs.size(); ++i) {
    remap[outs[i]] = static_cast<int>(ins.size() + i);
  }
  std::vector<Wire> kept;
  for (Wire w : d.wires()) {
    const bool between = (on_node(w.a, a) && on_node(w.b, b)) ||
                         (on_node(w.a, b) && on_node(w.b, a));
    if (between) continue;
    for (Endpoint* e : {&w.a, &w.b}) {
      if (on_node(*e, a) || on_node(*e, b)) {
        *e = Endpoint::port(a, remap.at({e->node, e->index}));
      }
    }
    kept.push_back(w);
  }
  d.mutable_wires() = std::move(kept);
  d.mutable_nodes().erase(b);
  d.mutable_node(a) = Node{std::move(kind), static_cast<int>(ins.size()),
                           static_cast<int>(outs.size()), -1};
}

Endpoint far_of(const Diagram& d, const Endpoint& e) {
  const int w = d.wire_at(e);
  return d.wires()[static_cast<std::size_t>(w)].other(e);
}

int dim_at(const Diagram& d, const Endpoint& e) {
  return d.wires()[static_cast<std::size_t>(d.wire_at(e))].dim;
}

// Value carried by a one-legged X spider: its leg is |-p> as an output and
// <p| as an input.
int basis_value(const Diagram& d, int id) {
  const auto* x = kind_of<XSpider>(d, id);
  return d.node(id).n_out == 1 ? mod(-x->phase, x->dim) : x->phase;
}

bool is_basis_state(const Diagram& d, int id) {
  return is_free(d, id) && kind_of<XSpider>(d, id) != nullptr && d.node(id).arity() == 1;
}

std::vector<int> free_nodes(const Diagram& d) {
  std::vector<int> out;
  for (const auto& [id, n] : d.nodes()) {
    if (n.group < 0) out.push_back(id);
  }
  return out;
}

// Two-legged nodes a and b joined by one wire: their far ends.
bool chain_pair(const Diagram& d, int a, int b, Endpoint& fa, Endpoint& fb) {
  const auto la = legs_of(d, a);
  const auto lb = legs_of(d, b);
  if (la.size() != 2 || lb.size() != 2) return false;
  int between = 0;
  for (const Leg& l : la) {
    if (on_node(l.far, b)) ++between;
    else fa = l.far;
  }
  for (const Leg& l : lb) {
    if (!on_node(l.far, a)) fb = l.far;
  }
  return between == 1 && !has_self_loop(la, a) && !has_self_loop(lb, b);
}

// Pairs of distinct free nodes of kind T joined by at least one wire.
template <typename T>
std::vector<MatchSite> connected_pairs(const Diagram& d) {
  std::set<std::pair<int, int>> seen;
  std::vector<MatchSite> out;
  for (std::size_t w = 0; w < d.wires().size(); ++w) {
    const Wire& wire = d.wires()[w];
    if (!wire.a.is_port() || !wire.b.is_port() || wire.a.node == wire.b.node) continue;
    const int a = std::min(wire.a.node, wire.b.node);
    const int b = std::max(wire.a.node, wire.b.node);
    if (!is_free(d, a) || !is_free(d, b)) continue;
    if (!kind_of<T>(d, a) || !kind_of<T>(d, b)) continue;
    if (!seen.insert({a, b}).second) continue;
    MatchSite site;
    site.nodes = {a, b};
    for (std::size_t v = 0; v < d.wires().size(); ++v) {
      const Wire& o = d.wires()[v];
      if ((on_node(o.a, a) && on_node(o.b, b)) || (on_node(o.a, b) && on_node(o.b, a))) {
        site.wires.push_back(static_cast<int>(v));
      }
    }
    out.push_back(site);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling helpers for certification.

const std::vector<int> kGridDims = {2, 3, 4};

Complex disk(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(rng));
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

std::vector<Complex> random_params(std::mt19937_64& rng, int n) {
  std::vector<Complex> p;
  for (int i = 0; i < n; ++i) p.push_back(disk(rng));
  return p;
}

int random_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

void for_each_assignment(int slots, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(slots), 0);
  while (true) {
    std::vector<int> dims;
    for (int i : idx) dims.push_back(kGridDims[static_cast<std::size_t>(i)]);
    fn(dims);
    int k = slots - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == static_cast<int>(kGridDims.size())) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) return;
  }
}

std::string dims_binding(const std::vector<int>& dims, int sample) {
  std::ostringstream os;
  os << "dims=(";
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ") sample=" << sample;
  return os.str();
}

constexpr int kSamplesPerAssignment = 5;

std::vector<Complex> ones(int n) { return std::vector<Complex>(static_cast<std::size_t>(std::max(n, 0)), 1.0); }

// ---------------------------------------------------------------------------
// ZX rules.

RewriteRule z_fusion_rule() {
  RewriteRule r;
  r.name = "s1_z_fusion";
  r.anchor = "spider fusion with pointwise product and minimum dimension";
  r.match = [](const Diagram& d) { return connected_pairs<ZSpider>(d); };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int a = site.nodes[0];
    const int b = site.nodes[1];
    const ZSpider za = *kind_of<ZSpider>(d, a);
    const ZSpider zb = *kind_of<ZSpider>(d, b);
    const auto la = legs_of(d, a);
    const auto lb = legs_of(d, b);
    std::vector<Leg> all = la;
    all.insert(all.end(), lb.begin(), lb.end());
    const int m = min_dim(all, 2);
    std::vector<Leg> rest;
    std::vector<std::pair<int, int>> ins, outs, a_outs, b_outs;
    for (const Leg& l : la) {
      if (on_node(l.far, b)) continue;
      rest.push_back(l);
      (l.port < d.node(a).n_in ? ins : a_outs).push_back({a, l.port});
    }
    std::vector<std::pair<int, int>> b_ins;
    for (const Leg& l : lb) {
      if (on_node(l.far, a)) continue;
      rest.push_back(l);
      (l.port < d.node(b).n_in ? b_ins : b_outs).push_back({b, l.port});
    }
    ins.insert(ins.end(), b_ins.begin(), b_ins.end());
    outs = a_outs;
    outs.insert(outs.end(), b_outs.begin(), b_outs.end());
    const int m_new = min_dim(rest, m);
    std::vector<Complex> params;
    for (int i = 1; i < m_new; ++i) {
      params.push_back(i < m ? z_value(za, i) * z_value(zb, i) : Complex(0.0));
    }
    merge_pair(d, a, b, ZSpider{params, rest.empty() ? m : 0}, ins, outs);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    // One connecting wire with an open leg on each side.
    for_each_assignment(3, [&](const std::vector<int>& dims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        Diagram d;
        const int a = d.add_node(
            ZSpider{random_params(rng, std::min(dims[0], dims[1]) - 1), 0}, 1, 1);
        const int b = d.add_node(
            ZSpider{random_params(rng, std::min(dims[1], dims[2]) - 1), 0}, 1, 1);
        d.connect(d.add_input(dims[0]), Endpoint::port(a, 0), dims[0]);
        d.connect(Endpoint::port(a, 1), Endpoint::port(b, 0), dims[1]);
        d.connect(Endpoint::port(b, 1), d.add_output(dims[2]), dims[2]);
        d.finish();
        out.push_back({dims_binding(dims, s), d});
      }
    });
    // Two parallel wires, and a fully closed pair.
    for_each_assignment(2, [&](const std::vector<int>& dims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        Diagram d;
        const int lo = std::min(dims[0], dims[1]);
        const int a = d.add_node(ZSpider{random_params(rng, std::min(lo, 3) - 1), 0}, 1, 2);
        const int b = d.add_node(ZSpider{random_params(rng, std::min(lo, 4) - 1), 0}, 2, 1);
        d.connect(d.add_input(3), Endpoint::port(a, 0), 3);
        d.connect(Endpoint::port(a, 1), Endpoint::port(b, 0), dims[0]);
        d.connect(Endpoint::port(a, 2), Endpoint::port(b, 1), dims[1]);
        d.connect(Endpoint::port(b, 2), d.add_output(4), 4);
        const int c = d.add_node(ZSpider{random_params(rng, dims[0] - 1), 0}, 0, 1);
        const int e = d.add_node(ZSpider{random_params(rng, dims[0] - 1), 0}, 1, 0);
        d.connect(Endpoint::port(c, 0), Endpoint::port(e, 0), dims[0]);
        d.finish();
        out.push_back({dims_binding(dims, s) + " parallel", d});
      }
    });
    return out;
  };
  return r;
}

RewriteRule x_fusion_rule() {
  RewriteRule r;
  r.name = "s4_x_fusion";
  r.anchor = "X spider fusion adds phases";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (const MatchSite& s : connected_pairs<XSpider>(d)) {
      const int a = s.nodes[0];
      const int b = s.nodes[1];
      if (s.wires.size() != 1) continue;
      if (kind_of<XSpider>(d, a)->dim != kind_of<XSpider>(d, b)->dim) continue;
      const auto la = legs_of(d, a);
      const auto lb = legs_of(d, b);
      if (has_self_loop(la, a) || has_self_loop(lb, b)) continue;
      if (la.size() + lb.size() < 3) continue;
      out.push_back(s);
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int a = site.nodes[0];
    const int b = site.nodes[1];
    const XSpider xa = *kind_of<XSpider>(d, a);
    const XSpider xb = *kind_of<XSpider>(d, b);
    const Wire& w = d.wires()[static_cast<std::size_t>(site.wires[0])];
    const Endpoint pa = on_node(w.a, a) ? w.a : w.b;
    const Endpoint pb = on_node(w.a, a) ? w.b : w.a;
    const bool a_in = is_input_port(d, pa);
    const bool b_in = is_input_port(d, pb);
    std::vector<std::pair<int, int>> a_ins, a_outs, b_ins, b_outs;
    for (int p = 0; p < d.node(a).arity(); ++p) {
      if (p == pa.index) continue;
      (p < d.node(a).n_in ? a_ins : a_outs).push_back({a, p});
    }
    for (int p = 0; p < d.node(b).arity(); ++p) {
      if (p == pb.index) continue;
      (p < d.node(b).n_in ? b_ins : b_outs).push_back({b, p});
    }
    std::vector<std::pair<int, int>> ins, outs;
    int phase = 0;
    if (a_in != b_in) {
      ins = a_ins;
      ins.insert(ins.end(), b_ins.begin(), b_ins.end());
      outs = a_outs;
      outs.insert(outs.end(), b_outs.begin(), b_outs.end());
      phase = xa.phase + xb.phase;
    } else {
      // Both ends on the same side: a's legs change role.
      ins = b_ins;
      ins.insert(ins.end(), a_outs.begin(), a_outs.end());
      outs = b_outs;
      outs.insert(outs.end(), a_ins.begin(), a_ins.end());
      phase = xb.phase - xa.phase;
    }
    merge_pair(d, a, b, XSpider{xa.dim, mod(phase, xa.dim)}, ins, outs);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        for (int orientation = 0; orientation < 3; ++orientation) {
          Diagram d;
          const int pa = random_int(rng, 0, dim - 1);
          const int pb = random_int(rng, 0, dim - 1);
          // orientation 0: a.out -> b.in; 1: a.out -> b.out; 2: a.in -> b.in.
          const int a = d.add_node(XSpider{dim, pa}, orientation == 2 ? 2 : 1,
                                   orientation == 2 ? 1 : 2);
          const int b = d.add_node(XSpider{dim, pb}, orientation == 1 ? 1 : 2,
                                   orientation == 1 ? 2 : 1);
          const Endpoint ea = orientation == 2 ? Endpoint::port(a, 1) : Endpoint::port(a, 2);
          const Endpoint eb = orientation == 1 ? Endpoint::port(b, 2) : Endpoint::port(b, 0);
          for (int p = 0; p < 3; ++p) {
            const Endpoint e = Endpoint::port(a, p);
            if (e == ea) continue;
            if (p < d.node(a).n_in) d.connect(d.add_input(dim), e, dim);
            else d.connect(e, d.add_output(dim), dim);
          }
          for (int p = 0; p < 3; ++p) {
            const Endpoint e = Endpoint::port(b, p);
            if (e == eb) continue;
            if (p < d.node(b).n_in) d.connect(d.add_input(dim), e, dim);
            else d.connect(e, d.add_output(dim), dim);
          }
          d.connect(ea, eb, dim);
          d.finish();
          out.push_back({dims_binding({dim}, s) + " orientation=" + std::to_string(orientation) +
                             " phases=" + std::to_string(pa) + "," + std::to_string(pb),
                         d});
        }
      }
    }
    return out;
  };
  return r;
}

RewriteRule identity_rule() {
  RewriteRule r;
  r.name = "s2_identity";
  r.anchor = "phase-free two-legged spiders are identity wires";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (int id : free_nodes(d)) {
      const Node& n = d.node(id);
      if (n.arity() != 2) continue;
      const auto legs = legs_of(d, id);
      if (has_self_loop(legs, id) || legs[0].dim != legs[1].dim) continue;
      bool trivial = false;
      if (const auto* z = kind_of<ZSpider>(d, id)) {
        trivial = all_ones(*z);
      } else if (const auto* x = kind_of<XSpider>(d, id)) {
        trivial = x->phase == 0 && n.n_in == 1;
      }
      if (trivial) out.push_back({{id}, {legs[0].wire, legs[1].wire}, {}, 0});
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const auto legs = legs_of(d, site.nodes[0]);
    erase_nodes(d, {site.nodes[0]});
    d.connect(legs[0].far, legs[1].far, legs[0].dim);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const Diagram before = z_spider(1, 1, dim, random_params(rng, dim - 1));
        for (const Diagram& trivial : {z_spider(1, 1, dim), x_spider(1, 1, dim, 0)}) {
          out.push_back({dims_binding({dim}, s), compose(before, trivial)});
        }
      }
    }
    return out;
  };
  return r;
}

RewriteRule ept_rule() {
  RewriteRule r;
  r.name = "ept_scalar";
  r.anchor = "disconnected legless spiders are scalars";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (int id : free_nodes(d)) {
      if (d.node(id).arity() == 0) out.push_back({{id}, {}, {}, 0});
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const Complex value = node_tensor(d.node(site.nodes[0]), {})[0];
    erase_nodes(d, {site.nodes[0]});
    d.multiply_scalar(value);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        out.push_back({dims_binding({dim}, s),
                       tensor({z_spider(0, 0, dim, random_params(rng, dim - 1)),
                               x_spider(0, 0, dim, random_int(rng, 0, dim - 1)),
                               identity(dim)})});
      }
    }
    return out;
  };
  return r;
}

// Rules on two-legged node pairs.
template <typename T>
std::vector<MatchSite> two_leg_pairs(const Diagram& d) {
  std::vector<MatchSite> out;
  for (const MatchSite& s : connected_pairs<T>(d)) {
    Endpoint fa, fb;
    if (s.wires.size() == 1 && chain_pair(d, s.nodes[0], s.nodes[1], fa, fb)) {
      out.push_back(s);
    }
  }
  return out;
}

RewriteRule du_rule() {
  RewriteRule r;
  r.name = "du_involution";
  r.anchor = "the dualiser is an involution";
  r.match = [](const Diagram& d) { return two_leg_pairs<Dualiser>(d); };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    Endpoint fa, fb;
    chain_pair(d, site.nodes[0], site.nodes[1], fa, fb);
    const int dim = kind_of<Dualiser>(d, site.nodes[0])->dim;
    erase_nodes(d, {site.nodes[0], site.nodes[1]});
    d.connect(fa, fb, dim);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const Diagram z = z_spider(1, 1, dim, random_params(rng, dim - 1));
        out.push_back({dims_binding({dim}, s), compose({z, dualiser(dim), dualiser(dim)})});
      }
    }
    return out;
  };
  return r;
}

RewriteRule hh_rule() {
  RewriteRule r;
  r.name = "hh_dualiser";
  r.anchor = "two Hadamards make a dualiser; a Hadamard and its adjoint cancel";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (const MatchSite& s : two_leg_pairs<Hadamard>(d)) {
      if (kind_of<Hadamard>(d, s.nodes[0])->dim == kind_of<Hadamard>(d, s.nodes[1])->dim) {
        out.push_back(s);
      }
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    Endpoint fa, fb;
    chain_pair(d, site.nodes[0], site.nodes[1], fa, fb);
    const Hadamard h0 = *kind_of<Hadamard>(d, site.nodes[0]);
    const Hadamard h1 = *kind_of<Hadamard>(d, site.nodes[1]);
    erase_nodes(d, {site.nodes[0], site.nodes[1]});
    if (h0.dagger == h1.dagger) {
      const int u = d.add_node(Dualiser{h0.dim}, 1, 1);
      d.connect(fa, Endpoint::port(u, 0), h0.dim);
      d.connect(Endpoint::port(u, 1), fb, h0.dim);
    } else {
      d.connect(fa, fb, h0.dim);
    }
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const Diagram z = z_spider(1, 1, dim, random_params(rng, dim - 1));
        for (int flags = 0; flags < 4; ++flags) {
          out.push_back({dims_binding({dim}, s) + " daggers=" + std::to_string(flags),
                         compose({z, hadamard(dim, flags & 1), hadamard(dim, flags & 2)})});
        }
      }
    }
    return out;
  };
  return r;
}

RewriteRule multiplier_rule() {
  RewriteRule r;
  r.name = "mu_multiplier_reduction";
  r.anchor = "multiplier wires count modulo the dimension";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (int z : free_nodes(d)) {
      if (!kind_of<ZSpider>(d, z)) continue;
      for (int x : free_nodes(d)) {
        const auto* xs = kind_of<XSpider>(d, x);
        if (!xs) continue;
        std::vector<int> by_role[2];
        for (const Leg& l : legs_of(d, x)) {
          if (on_node(l.far, z)) by_role[l.port < d.node(x).n_in ? 0 : 1].push_back(l.wire);
        }
        for (auto& group : by_role) {
          if (static_cast<int>(group.size()) < xs->dim) continue;
          if (d.node(x).arity() - xs->dim < 1) continue;
          std::sort(group.begin(), group.end());
          group.resize(static_cast<std::size_t>(xs->dim));
          out.push_back({{z, x}, group, {}, 0});
          break;
        }
      }
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int z = site.nodes[0];
    const int x = site.nodes[1];
    const ZSpider zs = *kind_of<ZSpider>(d, z);
    const auto before = legs_of(d, z);
    const int m = min_dim(before, zs.dim);
    std::set<int> z_ports, x_ports;
    for (int w : site.wires) {
      const Wire& wire = d.wires()[static_cast<std::size_t>(w)];
      z_ports.insert(on_node(wire.a, z) ? wire.a.index : wire.b.index);
      x_ports.insert(on_node(wire.a, x) ? wire.a.index : wire.b.index);
    }
    erase_wire_indices(d, site.wires);
    drop_ports(d, z, z_ports);
    drop_ports(d, x, x_ports);
    const auto after = legs_of(d, z);
    const int m_new = min_dim(after, m);
    std::vector<Complex> params;
    for (int i = 1; i < m_new; ++i) params.push_back(i < m ? z_value(zs, i) : Complex(0.0));
    d.mutable_node(z).kind = ZSpider{params, after.empty() ? m : 0};
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for_each_assignment(2, [&](const std::vector<int>& dims) {
      const int e = dims[0];
      const int dim = dims[1];
      for (int extra = 0; extra < 2; ++extra) {
        for (int s = 0; s < kSamplesPerAssignment; ++s) {
          const int k = dim + extra;
          Diagram d;
          const int z = d.add_node(ZSpider{random_params(rng, std::min(e, dim) - 1), 0}, 1, k);
          const int x = d.add_node(XSpider{dim, random_int(rng, 0, dim - 1)}, k, 1);
          d.connect(d.add_input(e), Endpoint::port(z, 0), e);
          for (int i = 0; i < k; ++i) {
            d.connect(Endpoint::port(z, 1 + i), Endpoint::port(x, i), dim);
          }
          d.connect(Endpoint::port(x, k), d.add_output(dim), dim);
          d.finish();
          out.push_back({dims_binding(dims, s) + " wires=" + std::to_string(k), d});
        }
      }
    });
    return out;
  };
  return r;
}

RewriteRule bialgebra_rule() {
  RewriteRule r;
  r.name = "b2_bialgebra";
  r.anchor = "bialgebra between phase-free Z and X spiders";
  r.expanding = true;
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (int z : free_nodes(d)) {
      const auto* zs = kind_of<ZSpider>(d, z);
      if (!zs || !all_ones(*zs)) continue;
      const auto lz = legs_of(d, z);
      if (lz.size() < 2 || has_self_loop(lz, z)) continue;
      const int dim = lz[0].dim;
      if (std::any_of(lz.begin(), lz.end(), [&](const Leg& l) { return l.dim != dim; })) continue;
      for (const Leg& l : lz) {
        if (!l.far.is_port()) continue;
        const int x = l.far.node;
        const auto* xs = kind_of<XSpider>(d, x);
        if (!xs || !is_free(d, x) || xs->phase != 0 || xs->dim != dim) continue;
        const auto lx = legs_of(d, x);
        if (lx.size() < 2 || has_self_loop(lx, x)) continue;
        const auto between = std::count_if(lz.begin(), lz.end(),
                                           [&](const Leg& m) { return on_node(m.far, x); });
        if (between != 1) continue;
        out.push_back({{z, x}, {l.wire}, {}, 0});
      }
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int z = site.nodes[0];
    const int x = site.nodes[1];
    const auto lz = legs_of(d, z);
    const auto lx = legs_of(d, x);
    const int dim = lz[0].dim;
    std::vector<Endpoint> a_far;
    for (const Leg& l : lz) {
      if (!on_node(l.far, x)) a_far.push_back(l.far);
    }
    bool wire_is_input = false;
    std::vector<std::pair<Endpoint, bool>> b_far;  // far end, x-side role is input
    for (const Leg& l : lx) {
      const bool in = l.port < d.node(x).n_in;
      if (on_node(l.far, z)) {
        wire_is_input = in;
      } else {
        b_far.push_back({l.far, in});
      }
    }
    erase_nodes(d, {z, x});
    const int na = static_cast<int>(a_far.size());
    const int nb = static_cast<int>(b_far.size());
    std::vector<int> zb(static_cast<std::size_t>(nb));
    for (int j = 0; j < nb; ++j) {
      zb[j] = d.add_node(ZSpider{ones(dim - 1), 0}, 1, na);
      d.connect(b_far[j].first, Endpoint::port(zb[j], 0), dim);
    }
    for (int i = 0; i < na; ++i) {
      // Leg j enters as an input when it should be added to the output leg.
      std::vector<int> as_input, as_output;
      for (int j = 0; j < nb; ++j) {
        const bool adds = b_far[j].second != wire_is_input;
        (adds ? as_input : as_output).push_back(j);
      }
      const int xa = d.add_node(XSpider{dim, 0}, static_cast<int>(as_input.size()),
                                1 + static_cast<int>(as_output.size()));
      int port = 0;
      for (int j : as_input) d.connect(Endpoint::port(zb[j], 1 + i), Endpoint::port(xa, port++), dim);
      d.connect(Endpoint::port(xa, port++), a_far[i], dim);
      for (int j : as_output) d.connect(Endpoint::port(zb[j], 1 + i), Endpoint::port(xa, port++), dim);
    }
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const int na = random_int(rng, 1, 2);
        const int nb_in = random_int(rng, 0, 1);
        const int nb_out = random_int(rng, 1, 2) - nb_in + 0;
        const bool wire_in = random_int(rng, 0, 1) == 1;
        Diagram d;
        const int z = d.add_node(ZSpider{ones(dim - 1), 0}, na, 1);
        const int x = d.add_node(XSpider{dim, 0}, nb_in + (wire_in ? 1 : 0),
                                 std::max(nb_out, 1) + (wire_in ? 0 : 1));
        for (int i = 0; i < na; ++i) d.connect(d.add_input(dim), Endpoint::port(z, i), dim);
        const Node& xn = d.node(x);
        const Endpoint wx = wire_in ? Endpoint::port(x, xn.n_in - 1) : Endpoint::port(x, xn.arity() - 1);
        d.connect(Endpoint::port(z, na), wx, dim);
        for (int p = 0; p < xn.arity(); ++p) {
          const Endpoint e = Endpoint::port(x, p);
          if (e == wx) continue;
          if (p < xn.n_in) d.connect(d.add_input(dim), e, dim);
          else d.connect(e, d.add_output(dim), dim);
        }
        d.finish();
        out.push_back({dims_binding({dim}, s), d});
      }
    }
    return out;
  };
  return r;
}

RewriteRule colour_change_rule() {
  RewriteRule r;
  r.name = "hz_colour_change";
  r.anchor = "an X spider is a Z spider conjugated by Hadamards";
  r.expanding = true;
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (int id : free_nodes(d)) {
      const auto legs = legs_of(d, id);
      if (kind_of<XSpider>(d, id) && !legs.empty() && !has_self_loop(legs, id)) {
        out.push_back({{id}, {}, {}, 0});
      }
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int id = site.nodes[0];
    const XSpider x = *kind_of<XSpider>(d, id);
    const Node n = d.node(id);
    const auto legs = legs_of(d, id);
    erase_nodes(d, {id});
    std::vector<Complex> params;
    for (int v = 1; v < x.dim; ++v) {
      params.push_back(std::polar(1.0, -2.0 * std::numbers::pi * mod(x.phase * v, x.dim) / x.dim));
    }
    const int z = d.add_node(ZSpider{params, 0}, n.n_in, n.n_out);
    for (const Leg& l : legs) {
      const bool in = l.port < n.n_in;
      const int h = d.add_node(Hadamard{x.dim, !in}, 1, 1);
      if (in) {
        d.connect(l.far, Endpoint::port(h, 0), x.dim);
        d.connect(Endpoint::port(h, 1), Endpoint::port(z, l.port), x.dim);
      } else {
        d.connect(Endpoint::port(z, l.port), Endpoint::port(h, 0), x.dim);
        d.connect(Endpoint::port(h, 1), l.far, x.dim);
      }
    }
    d.multiply_scalar(std::pow(static_cast<double>(x.dim), legs.size() / 2.0 - 1.0));
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const int n_in = random_int(rng, 0, 2);
        const int n_out = random_int(rng, 1, 2);
        out.push_back({dims_binding({dim}, s),
                       x_spider(n_in, n_out, dim, random_int(rng, 0, dim - 1))});
      }
    }
    return out;
  };
  return r;
}

// ---------------------------------------------------------------------------
// Basis-state rules.

// One-legged X spiders whose neighbour satisfies `accept`.
std::vector<MatchSite> basis_sites(const Diagram& d,
                                   const std::function<bool(int state, int other, const Leg&)>& accept) {
  std::vector<MatchSite> out;
  for (int s : free_nodes(d)) {
    if (!is_basis_state(d, s)) continue;
    const Leg leg = legs_of(d, s)[0];
    if (!leg.far.is_port() || leg.far.node == s || !is_free(d, leg.far.node)) continue;
    if (accept(s, leg.far.node, leg)) out.push_back({{s, leg.far.node}, {leg.wire}, {}, 0});
  }
  return out;
}

RewriteRule state_copy_rule() {
  RewriteRule r;
  r.name = "state_copy";
  r.anchor = "Z spiders copy computational basis states";
  r.match = [](const Diagram& d) {
    return basis_sites(d, [&](int, int z, const Leg&) {
      return kind_of<ZSpider>(d, z) && !has_self_loop(legs_of(d, z), z);
    });
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int s = site.nodes[0];
    const int z = site.nodes[1];
    const int v = basis_value(d, s);
    const ZSpider zs = *kind_of<ZSpider>(d, z);
    const auto lz = legs_of(d, z);
    const int m = min_dim(lz, zs.dim);
    const Complex weight = v < m ? z_value(zs, v) : Complex(0.0);
    std::vector<Leg> others;
    for (const Leg& l : lz) {
      if (!on_node(l.far, s)) others.push_back(l);
    }
    erase_nodes(d, {s, z});
    for (const Leg& l : others) {
      const int x = d.add_node(XSpider{l.dim, mod(-v, l.dim)}, 0, 1);
      d.connect(Endpoint::port(x, 0), l.far, l.dim);
    }
    d.multiply_scalar(weight);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for_each_assignment(3, [&](const std::vector<int>& dims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const int ds = dims[0];
        const int m = *std::min_element(dims.begin(), dims.end());
        const Diagram state = x_spider(0, 1, ds, random_int(rng, 0, ds - 1));
        const Diagram z = z_spider_mixed({ds}, {dims[1], dims[2]}, random_params(rng, m - 1));
        out.push_back({dims_binding(dims, s), compose(state, z)});
        out.push_back({dims_binding(dims, s) + " effect",
                       compose(adjoint(z), x_spider(1, 0, ds, random_int(rng, 0, ds - 1)))});
      }
    });
    return out;
  };
  return r;
}

RewriteRule absorb_rule() {
  RewriteRule r;
  r.name = "basis_absorb_x";
  r.anchor = "X spiders absorb basis states into their phase";
  r.match = [](const Diagram& d) {
    return basis_sites(d, [&](int s, int x, const Leg& l) {
      const auto* xs = kind_of<XSpider>(d, x);
      return xs && xs->dim == l.dim && d.node(x).arity() >= 2 && x != s;
    });
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int s = site.nodes[0];
    const int x = site.nodes[1];
    const int v = basis_value(d, s);
    const Endpoint px = far_of(d, Endpoint::port(s, 0));
    XSpider xs = *kind_of<XSpider>(d, x);
    xs.phase = mod(is_input_port(d, px) ? xs.phase - v : xs.phase + v, xs.dim);
    erase_nodes(d, {s});
    drop_ports(d, x, {px.index});
    d.mutable_node(x).kind = xs;
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const Diagram x = x_spider(2, 1, dim, random_int(rng, 0, dim - 1));
        const Diagram state = x_spider(0, 1, dim, random_int(rng, 0, dim - 1));
        out.push_back({dims_binding({dim}, s) + " input",
                       compose(tensor(state, identity(dim)), x)});
        out.push_back({dims_binding({dim}, s) + " output",
                       compose(x, x_spider(1, 0, dim, random_int(rng, 0, dim - 1)))});
      }
    }
    return out;
  };
  return r;
}

RewriteRule through_du_rule() {
  RewriteRule r;
  r.name = "basis_through_du";
  r.anchor = "the dualiser negates basis states";
  r.match = [](const Diagram& d) {
    return basis_sites(d, [&](int s, int u, const Leg&) {
      if (!kind_of<Dualiser>(d, u)) return false;
      for (const Leg& l : legs_of(d, u)) {
        if (on_node(l.far, u)) return false;
      }
      return u != s;
    });
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int s = site.nodes[0];
    const int u = site.nodes[1];
    const int v = basis_value(d, s);
    const int dim = kind_of<Dualiser>(d, u)->dim;
    Endpoint far;
    for (const Leg& l : legs_of(d, u)) {
      if (!on_node(l.far, s)) far = l.far;
    }
    erase_nodes(d, {s, u});
    // A one-legged output with phase p carries -p; here the value is -v.
    const int x = d.add_node(XSpider{dim, mod(v, dim)}, 0, 1);
    d.connect(Endpoint::port(x, 0), far, dim);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        out.push_back({dims_binding({dim}, s),
                       compose(x_spider(0, 1, dim, random_int(rng, 0, dim - 1)), dualiser(dim))});
      }
    }
    return out;
  };
  return r;
}

RewriteRule through_h_rule() {
  RewriteRule r;
  r.name = "basis_through_hadamard";
  r.anchor = "a Hadamard maps a basis state to a phased Z state";
  r.match = [](const Diagram& d) {
    return basis_sites(d, [&](int s, int h, const Leg& l) {
      const auto* hs = kind_of<Hadamard>(d, h);
      if (!hs || hs->dim != l.dim) return false;
      for (const Leg& m : legs_of(d, h)) {
        if (on_node(m.far, h)) return false;
      }
      return h != s;
    });
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const int s = site.nodes[0];
    const int h = site.nodes[1];
    const int v = basis_value(d, s);
    const Hadamard hs = *kind_of<Hadamard>(d, h);
    Endpoint far;
    for (const Leg& l : legs_of(d, h)) {
      if (!on_node(l.far, s)) far = l.far;
    }
    erase_nodes(d, {s, h});
    std::vector<Complex> params;
    const double sign = hs.dagger ? -1.0 : 1.0;
    for (int k = 1; k < hs.dim; ++k) {
      params.push_back(std::polar(1.0, sign * 2.0 * std::numbers::pi * mod(v * k, hs.dim) / hs.dim));
    }
    const int z = d.add_node(ZSpider{params, 0}, 0, 1);
    d.connect(Endpoint::port(z, 0), far, hs.dim);
    d.multiply_scalar(1.0 / std::sqrt(static_cast<double>(hs.dim)));
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const bool dagger = random_int(rng, 0, 1) == 1;
        out.push_back({dims_binding({dim}, s),
                       compose(x_spider(0, 1, dim, random_int(rng, 0, dim - 1)),
                               hadamard(dim, dagger))});
        out.push_back({dims_binding({dim}, s) + " effect",
                       compose(hadamard(dim, dagger),
                               x_spider(1, 0, dim, random_int(rng, 0, dim - 1)))});
      }
    }
    return out;
  };
  return r;
}

// ---------------------------------------------------------------------------
// Scalar rules.

RewriteRule closed_component_rule() {
  RewriteRule r;
  r.name = "closed_component_contract";
  r.anchor = "a closed sub-diagram equals its scalar value";
  r.match = [](const Diagram& d) {
    std::map<int, int> parent;
    for (const auto& [id, n] : d.nodes()) parent[id] = id;
    std::function<int(int)> root = [&](int x) {
      return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    std::set<int> open;
    for (const Wire& w : d.wires()) {
      if (w.a.is_port() && w.b.is_port()) {
        parent[root(w.a.node)] = root(w.b.node);
      }
    }
    for (const Wire& w : d.wires()) {
      if (w.a.is_port() && w.b.is_boundary()) open.insert(root(w.a.node));
      if (w.b.is_port() && w.a.is_boundary()) open.insert(root(w.b.node));
    }
    std::map<int, std::vector<int>> comps;
    for (const auto& [id, n] : d.nodes()) comps[root(id)].push_back(id);
    std::vector<MatchSite> out;
    for (auto& [rt, members] : comps) {
      if (open.count(rt)) continue;
      if (members.size() == 1 && d.node(members[0]).arity() == 0) continue;
      std::sort(members.begin(), members.end());
      out.push_back({members, {}, {}, 0});
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const std::set<int> members(site.nodes.begin(), site.nodes.end());
    Diagram sub;
    std::map<int, int> ids;
    for (int id : site.nodes) {
      const Node& n = d.node(id);
      ids[id] = sub.add_node(n.kind, n.n_in, n.n_out);
    }
    for (const Wire& w : d.wires()) {
      if (w.a.is_port() && members.count(w.a.node)) {
        sub.connect(Endpoint::port(ids[w.a.node], w.a.index),
                    Endpoint::port(ids[w.b.node], w.b.index), w.dim);
      }
    }
    sub.finish();
    EvalConfig config;
    config.max_total_entries = std::size_t{1} << 22;
    const Complex value = evaluate_scalar(sub, config);
    erase_nodes(d, members);
    d.multiply_scalar(value);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        const Diagram closed =
            compose({z_spider(0, 1, dim, random_params(rng, dim - 1)), hadamard(dim),
                     triangle(dim), x_spider(1, 0, dim, random_int(rng, 0, dim - 1))});
        const Diagram looped = compose(cup(dim), tensor(z_spider(1, 1, dim, random_params(rng, dim - 1)),
                                                        identity(dim)));
        out.push_back({dims_binding({dim}, s),
                       tensor({closed, compose(looped, cap(dim)), identity(2)})});
      }
    }
    return out;
  };
  return r;
}

Diagram collapsed(const Diagram& d) {
  Diagram c;
  std::vector<Endpoint> ins, outs;
  for (int dim : d.input_dims()) ins.push_back(c.add_input(dim));
  for (int dim : d.output_dims()) outs.push_back(c.add_output(dim));
  for (std::size_t i = 0; i < ins.size(); ++i) {
    const int dim = d.input_dims()[i];
    const int z = c.add_node(ZSpider{ones(dim - 1), 0}, 1, 0);
    c.connect(ins[i], Endpoint::port(z, 0), dim);
  }
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const int dim = d.output_dims()[i];
    const int z = c.add_node(ZSpider{ones(dim - 1), 0}, 0, 1);
    c.connect(Endpoint::port(z, 0), outs[i], dim);
  }
  c.set_scalar(0.0);
  c.finish();
  return c;
}

RewriteRule zero_rule() {
  RewriteRule r;
  r.name = "zero_scalar_collapse";
  r.anchor = "a diagram with scalar zero is the zero map";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    if (d.scalar() == Complex(0.0) && !(collapsed(d) == d)) {
      MatchSite site;
      for (const auto& [id, n] : d.nodes()) site.nodes.push_back(id);
      out.push_back(site);
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite&) { return collapsed(host); };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int dim : kGridDims) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        out.push_back({dims_binding({dim}, s),
                       scaled(tensor(z_spider(1, 2, dim, random_params(rng, dim - 1)),
                                     identity(dim)),
                              0.0)});
      }
    }
    return out;
  };
  return r;
}

// ---------------------------------------------------------------------------
// Spin rules on tagged groups.

std::vector<int> group_members(const Diagram& d, int gid) {
  std::vector<int> out;
  for (const auto& [id, n] : d.nodes()) {
    if (n.group == gid) out.push_back(id);
  }
  return out;
}

bool is_sym(const Group& g) { return g.label == kSymmetriserGroup; }
bool is_singlet(const Group& g) {
  return g.label == kSingletEffectGroup || g.label == kSingletStateGroup;
}

bool contains(const std::vector<Endpoint>& v, const Endpoint& e) {
  return std::find(v.begin(), v.end(), e) != v.end();
}

bool all_far_in(const Diagram& d, const std::vector<Endpoint>& ports,
                const std::vector<Endpoint>& targets) {
  for (const Endpoint& p : ports) {
    if (!contains(targets, far_of(d, p))) return false;
  }
  return true;
}

bool far_outside(const Diagram& d, const std::vector<Endpoint>& ports, int gid) {
  for (const Endpoint& p : ports) {
    const Endpoint f = far_of(d, p);
    if (f.is_port() && d.node(f.node).group == gid) return false;
  }
  return true;
}

MatchSite group_site(const Diagram& d, std::vector<int> groups) {
  MatchSite site;
  site.groups = groups;
  for (int g : groups) {
    const auto m = group_members(d, g);
    site.nodes.insert(site.nodes.end(), m.begin(), m.end());
  }
  return site;
}

RewriteRule sym_idempotence_rule() {
  RewriteRule r;
  r.name = "sym_idempotence";
  r.anchor = "symmetrisers are idempotent";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (const auto& [g1, a] : d.groups()) {
      for (const auto& [g2, b] : d.groups()) {
        if (g1 == g2 || !is_sym(a) || !is_sym(b) || a.size != b.size) continue;
        if (all_far_in(d, a.outputs, b.inputs) && far_outside(d, b.outputs, g2)) {
          out.push_back(group_site(d, {g1, g2}));
        }
      }
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const Group first = d.groups().at(site.groups[0]);
    const Group second = d.groups().at(site.groups[1]);
    std::vector<std::pair<Endpoint, int>> ext;
    for (const Endpoint& p : second.outputs) ext.push_back({far_of(d, p), dim_at(d, p)});
    const auto members = group_members(d, site.groups[1]);
    erase_nodes(d, {members.begin(), members.end()});
    for (std::size_t i = 0; i < first.outputs.size(); ++i) {
      d.connect(first.outputs[i], ext[i].first, ext[i].second);
    }
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int n = 1; n <= 3; ++n) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        out.push_back({"n=" + std::to_string(n) + " sample=" + std::to_string(s),
                       compose({symmetriser(n), permutation(std::vector<int>(n, 2), perm),
                                symmetriser(n)})});
      }
    }
    return out;
  };
  return r;
}

RewriteRule sym_stacking_rule() {
  RewriteRule r;
  r.name = "sym_stacking";
  r.anchor = "a symmetriser absorbs a smaller one on some of its legs";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (const auto& [gb, big] : d.groups()) {
      for (const auto& [gs, small] : d.groups()) {
        if (gb == gs || !is_sym(big) || !is_sym(small) || small.size >= big.size) continue;
        const bool before = all_far_in(d, small.outputs, big.inputs) &&
                            far_outside(d, small.inputs, gs);
        const bool after = all_far_in(d, small.inputs, big.outputs) &&
                           far_outside(d, small.outputs, gs);
        if (before || after) out.push_back(group_site(d, {gb, gs}));
      }
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const Group big = d.groups().at(site.groups[0]);
    const Group small = d.groups().at(site.groups[1]);
    const bool before = all_far_in(d, small.outputs, big.inputs);
    const auto& inner = before ? small.outputs : small.inputs;
    const auto& outer = before ? small.inputs : small.outputs;
    std::vector<std::pair<Endpoint, Endpoint>> links;
    std::vector<int> dims;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      links.push_back({far_of(d, outer[i]), far_of(d, inner[i])});
      dims.push_back(dim_at(d, outer[i]));
    }
    const auto members = group_members(d, site.groups[1]);
    erase_nodes(d, {members.begin(), members.end()});
    for (std::size_t i = 0; i < links.size(); ++i) {
      d.connect(links[i].first, links[i].second, dims[i]);
    }
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int n = 2; n <= 4; ++n) {
      for (int k = 1; k < n; ++k) {
        for (int s = 0; s < kSamplesPerAssignment; ++s) {
          std::vector<int> perm(static_cast<std::size_t>(n));
          std::iota(perm.begin(), perm.end(), 0);
          std::shuffle(perm.begin(), perm.end(), rng);
          const std::vector<int> dims(static_cast<std::size_t>(n), 2);
          const Diagram small = tensor(symmetriser(k), identity_wires(std::vector<int>(n - k, 2)));
          const std::string b = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                " sample=" + std::to_string(s);
          out.push_back({b + " before", compose({small, permutation(dims, perm), symmetriser(n)})});
          out.push_back({b + " after", compose({symmetriser(n), permutation(dims, perm), small})});
        }
      }
    }
    return out;
  };
  return r;
}

RewriteRule singlet_capping_rule() {
  RewriteRule r;
  r.name = "singlet_capping";
  r.anchor = "a singlet on two legs of a symmetriser gives zero";
  r.match = [](const Diagram& d) {
    std::vector<MatchSite> out;
    for (const auto& [gs, sym] : d.groups()) {
      if (!is_sym(sym) || sym.size < 2) continue;
      for (const auto& [gt, singlet] : d.groups()) {
        if (!is_singlet(singlet)) continue;
        std::vector<Endpoint> ports = singlet.inputs;
        ports.insert(ports.end(), singlet.outputs.begin(), singlet.outputs.end());
        if (ports.size() != 2) continue;
        if (all_far_in(d, ports, sym.outputs) || all_far_in(d, ports, sym.inputs)) {
          out.push_back(group_site(d, {gs, gt}));
        }
      }
    }
    return out;
  };
  r.rewrite = [](const Diagram& host, const MatchSite& site) {
    Diagram d = host;
    const Group singlet = d.groups().at(site.groups[1]);
    std::vector<Endpoint> ports = singlet.inputs;
    ports.insert(ports.end(), singlet.outputs.begin(), singlet.outputs.end());
    std::vector<Endpoint> ends;
    for (const Endpoint& p : ports) ends.push_back(far_of(d, p));
    const auto members = group_members(d, site.groups[1]);
    erase_nodes(d, {members.begin(), members.end()});
    for (const Endpoint& e : ends) {
      const int z = d.add_node(ZSpider{{1.0}, 0}, 1, 0);
      d.connect(e, Endpoint::port(z, 0), 2);
    }
    d.set_scalar(0.0);
    d.finish();
    return d;
  };
  r.samples = [](std::mt19937_64& rng) {
    std::vector<RuleSample> out;
    for (int n = 2; n <= 4; ++n) {
      for (int s = 0; s < kSamplesPerAssignment; ++s) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const std::vector<int> dims(static_cast<std::size_t>(n), 2);
        const std::vector<int> rest(static_cast<std::size_t>(n - 2), 2);
        const std::string b = "n=" + std::to_string(n) + " sample=" + std::to_string(s);
        out.push_back({b + " effect",
                       compose({symmetriser(n), permutation(dims, perm),
                                tensor(singlet_effect(), identity_wires(rest))})});
        out.push_back({b + " state",
                       compose({tensor(singlet_state(), identity_wires(rest)),
                                permutation(dims, perm), symmetriser(n)})});
      }
    }
    return out;
  };
  return r;
}

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string MatchSite::summary() const {
  std::ostringstream os;
  os << "nodes {";
  for (std::size_t i = 0; i < nodes.size(); ++i) os << (i ? "," : "") << nodes[i];
  os << "}";
  if (!groups.empty()) {
    os << " groups {";
    for (std::size_t i = 0; i < groups.size(); ++i) os << (i ? "," : "") << groups[i];
    os << "}";
  }
  return os.str();
}

std::string TraceEntry::str() const {
  return "step " + std::to_string(step) + ": " + rule + " @ " + site;
}

CertifiedRule certify(RewriteRule rule, const CertificationConfig& config) {
  if (!rule.match || !rule.rewrite || !rule.samples) {
    throw SoundnessFailure(rule.name, "incomplete rule", std::numeric_limits<double>::infinity());
  }
  std::mt19937_64 rng(config.seed ^ name_hash(rule.name));
  const std::vector<RuleSample> samples = rule.samples(rng);
  if (samples.empty()) {
    throw SoundnessFailure(rule.name, "no samples", std::numeric_limits<double>::infinity());
  }
  EvalConfig eval;
  eval.tolerance = config.tolerance;
  CertificationReport report;
  for (const RuleSample& sample : samples) {
    const auto sites = rule.match(sample.lhs);
    if (sites.empty()) {
      throw SoundnessFailure(rule.name, sample.binding + " (pattern did not match)",
                             std::numeric_limits<double>::infinity());
    }
    const Tensor lhs = evaluate(sample.lhs, eval);
    for (const MatchSite& site : sites) {
      Diagram rhs_d;
      try {
        rhs_d = rule.rewrite(sample.lhs, site);
      } catch (const SoundnessFailure&) {
        throw;
      } catch (const Error& e) {
        throw SoundnessFailure(rule.name, sample.binding + " (" + e.what() + ")",
                               std::numeric_limits<double>::infinity());
      }
      if (rhs_d.input_dims() != sample.lhs.input_dims() ||
          rhs_d.output_dims() != sample.lhs.output_dims()) {
        throw SoundnessFailure(rule.name, sample.binding + " (boundary changed)",
                               std::numeric_limits<double>::infinity());
      }
      const Tensor rhs = evaluate(rhs_d, eval);
      if (!tensors_close(lhs, rhs, eval)) {
        throw SoundnessFailure(rule.name, sample.binding + " at " + site.summary(),
                               max_abs_diff(lhs, rhs), lhs.data(), rhs.data());
      }
      ++report.sites;
    }
    ++report.samples;
  }
  return CertifiedRule(std::move(rule), report);
}

const CertifiedRule& RuleRegistry::register_rule(RewriteRule rule,
                                                 const CertificationConfig& config) {
  if (find(rule.name)) throw Error("rule '" + rule.name + "' is already registered");
  rules_.push_back(std::make_unique<CertifiedRule>(certify(std::move(rule), config)));
  return *rules_.back();
}

const CertifiedRule* RuleRegistry::find(const std::string& name) const {
  for (const auto& r : rules_) {
    if (r->name() == name) return r.get();
  }
  return nullptr;
}

const CertifiedRule& RuleRegistry::at(const std::string& name) const {
  const CertifiedRule* r = find(name);
  if (!r) throw Error("unknown rule '" + name + "'");
  return *r;
}

std::vector<std::string> RuleRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& r : rules_) out.push_back(r->name());
  return out;
}

std::vector<RewriteRule> builtin_rule_definitions() {
  return {z_fusion_rule(),       x_fusion_rule(),        identity_rule(),
          ept_rule(),            du_rule(),              hh_rule(),
          multiplier_rule(),     bialgebra_rule(),       colour_change_rule(),
          state_copy_rule(),     absorb_rule(),          through_du_rule(),
          through_h_rule(),      closed_component_rule(), zero_rule(),
          sym_idempotence_rule(), sym_stacking_rule(),   singlet_capping_rule()};
}

const RuleRegistry& builtin_rules() {
  static const RuleRegistry registry = [] {
    RuleRegistry r;
    for (auto& rule : builtin_rule_definitions()) r.register_rule(std::move(rule));
    return r;
  }();
  return registry;
}

std::vector<MatchSite> find_matches(const Diagram& d, const CertifiedRule& rule) {
  std::vector<MatchSite> sites = rule.rule().match(d);
  const std::uint64_t fp = d.fingerprint();
  for (auto& s : sites) s.fingerprint = fp;
  std::stable_sort(sites.begin(), sites.end(), [](const MatchSite& a, const MatchSite& b) {
    return a.nodes < b.nodes;
  });
  return sites;
}

Diagram apply_rule(const Diagram& d, const CertifiedRule& rule, const MatchSite& site,
                   const ApplyOptions& options) {
  if (site.fingerprint != d.fingerprint()) {
    throw StaleSite("site for rule '" + rule.name() + "' was found in a different diagram");
  }
  Diagram out = rule.rule().rewrite(d, site);
  if (options.verify) {
    const Tensor before = evaluate(d, options.eval);
    const Tensor after = evaluate(out, options.eval);
    if (!tensors_close(before, after, options.eval)) {
      throw SoundnessFailure(rule.name(), site.summary(), max_abs_diff(before, after),
                             before.data(), after.data());
    }
  }
  return out;
}

Strategy parse_strategy(const std::string& name) {
  if (name == "fuse") return Strategy::kFuse;
  if (name == "spin") return Strategy::kSpin;
  if (name == "full") return Strategy::kFull;
  throw Error("unknown strategy '" + name + "' (expected fuse, spin or full)");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kFuse:
      return "fuse";
    case Strategy::kSpin:
      return "spin";
    case Strategy::kFull:
      return "full";
  }
  return "full";
}

std::vector<std::string> strategy_rules(Strategy s) {
  const std::vector<std::string> fuse = {"s2_identity",  "ept_scalar",   "s1_z_fusion",
                                         "s4_x_fusion",  "du_involution", "hh_dualiser"};
  const std::vector<std::string> spin = {"sym_idempotence", "sym_stacking", "singlet_capping",
                                         "zero_scalar_collapse"};
  switch (s) {
    case Strategy::kFuse:
      return fuse;
    case Strategy::kSpin:
      return spin;
    case Strategy::kFull: {
      std::vector<std::string> all = spin;
      all.insert(all.end(), fuse.begin(), fuse.end());
      for (const char* n : {"state_copy", "basis_absorb_x", "basis_through_du",
                            "basis_through_hadamard", "mu_multiplier_reduction",
                            "closed_component_contract"}) {
        all.emplace_back(n);
      }
      return all;
    }
  }
  return {};
}

SimplifyResult simplify(const Diagram& d, Strategy strategy, int max_steps,
                        const RuleRegistry& registry) {
  std::vector<const CertifiedRule*> rules;
  for (const auto& name : strategy_rules(strategy)) rules.push_back(&registry.at(name));
  SimplifyResult result{d, {}, false};
  int step = 0;
  while (true) {
    bool applied = false;
    if (step >= max_steps) {
      for (const CertifiedRule* rule : rules) {
        if (!find_matches(result.diagram, *rule).empty()) {
          result.reached_cap = true;
          break;
        }
      }
      break;
    }
    for (const CertifiedRule* rule : rules) {
      for (const MatchSite& site : find_matches(result.diagram, *rule)) {
        try {
          result.diagram = apply_rule(result.diagram, *rule, site);
        } catch (const SizeExceeded&) {
          continue;
        }
        result.trace.push_back({++step, rule->name(), site.summary()});
        applied = true;
        break;
      }
      if (applied) break;
    }
    if (applied) continue;
    if (strategy == Strategy::kFull && !result.diagram.groups().empty()) {
      // Let the plain ZX rules see inside tagged composites.
      Diagram next = result.diagram;
      std::vector<int> ids;
      for (const auto& [gid, g] : next.groups()) ids.push_back(gid);
      for (int gid : ids) next.dissolve_group(gid);
      next.finish();
      result.diagram = next;
      result.trace.push_back({++step, "dissolve_groups", "all"});
      continue;
    }
    break;
  }
  return result;
}

}  // namespace spinzx
