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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "spinzx/eval.hpp"
#include "spinzx/rewrite.hpp"
#include "spinzx/serialize.hpp"
#include "spinzx/su2.hpp"
#include "spinzx/suites.hpp"

namespace spinzx::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchema = 1;
// Diagrams with at most this many boundary wires are re-evaluated after
// simplification.
constexpr int kVerifyWireLimit = 8;

std::string fmt_double(double x) {
  if (std::abs(x) < 1e-15) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fmt_complex(Complex z) {
  const double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
  if (im == 0.0) return fmt_double(re);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", re, im);
  return buf;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

std::string dims_str(const std::vector<int>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

void print_matrix(std::ostream& out, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << "  " << fmt_complex(m(r, c));
    }
    out << "\n";
  }
}

Json check_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["kind"] = c.kind == Check::Kind::kAtMost ? "max_residual" : "min_value";
  j["value"] = c.value;
  j["bound"] = c.bound;
  j["cases"] = c.cases;
  j["pass"] = c.pass();
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json fact_json(const Fact& f) {
  if (const auto* s = std::get_if<std::string>(&f.value)) return *s;
  if (const auto* d = std::get_if<double>(&f.value)) return *d;
  return complex_json(std::get<Complex>(f.value));
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

EvalConfig eval_config(const CliConfig& c) {
  EvalConfig e;
  e.tolerance = c.tolerance;
  e.max_total_entries = c.max_entries;
  return e;
}

SuiteConfig suite_config(const CliConfig& c) {
  SuiteConfig s;
  s.tolerance = c.tolerance;
  s.seed = c.seed;
  s.eval = eval_config(c);
  return s;
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_eval(const CliConfig& cfg, const std::string& path, std::ostream& out) {
  const Diagram d = read_zxd_file(path);
  const Matrix m = evaluate_matrix(d, eval_config(cfg));
  const bool scalar = d.n_inputs() == 0 && d.n_outputs() == 0;
  if (cfg.output == OutputFormat::kJson) {
    Json j = header("eval");
    j["inputs"] = d.input_dims();
    j["outputs"] = d.output_dims();
    if (scalar) {
      j["value"] = complex_json(m(0, 0));
    } else {
      j["rows"] = m.rows();
      j["cols"] = m.cols();
      j["entries"] = matrix_json(m);
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (scalar) {
    out << fmt_complex(m(0, 0)) << "\n";
    return kExitOk;
  }
  out << "shape: outputs " << dims_str(d.output_dims()) << ", inputs " << dims_str(d.input_dims())
      << "\n";
  out << "matrix " << m.rows() << "x" << m.cols() << " (rows are outputs):\n";
  print_matrix(out, m);
  return kExitOk;
}

void check_spin(int twice) {
  if (twice < 0) throw InvalidSpinArgs("spin must be non-negative");
}

void check_pair(int twice_j, int twice_m) {
  try {
    basis_index(SpinLabel(twice_j), MagneticLabel(twice_m));
  } catch (const InvalidMagnetic& e) {
    throw InvalidSpinArgs(e.what());
  }
}

int print_oracle_value(const CliConfig& cfg, const std::string& name, double value,
                       const std::optional<std::string>& note, std::ostream& out) {
  if (cfg.output == OutputFormat::kJson) {
    Json j = header("oracle");
    j["oracle"] = name;
    j["value"] = value;
    if (note) j["note"] = *note;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << fmt_double(value) << "\n";
  if (note) out << "note: " << *note << "\n";
  return kExitOk;
}

int print_oracle_matrix(const CliConfig& cfg, const std::string& name, const Matrix& m,
                        std::ostream& out) {
  if (cfg.output == OutputFormat::kJson) {
    Json j = header("oracle");
    j["oracle"] = name;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = matrix_json(m);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "matrix " << m.rows() << "x" << m.cols() << ":\n";
  print_matrix(out, m);
  return kExitOk;
}

std::vector<int> parse_all(const std::vector<std::string>& args, std::size_t expected,
                           const std::string& usage) {
  if (args.size() != expected) {
    throw InvalidSpinArgs("expected " + std::to_string(expected) + " arguments: " + usage);
  }
  std::vector<int> out;
  for (const auto& a : args) out.push_back(parse_twice(a));
  return out;
}

const char* kConditionsNote = "Clebsch-Gordan conditions violated";

int cmd_3jm(const CliConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
  const auto v = parse_all(args, 6, "j1 j2 j3 m1 m2 m3");
  for (int i = 0; i < 3; ++i) {
    check_spin(v[i]);
    check_pair(v[i], v[i + 3]);
  }
  const SpinTriple t{SpinLabel(v[0]), SpinLabel(v[1]), SpinLabel(v[2])};
  std::optional<std::string> note;
  if (!t.admissible() || v[3] + v[4] + v[5] != 0) note = kConditionsNote;
  const double w = wigner_3jm(t, MagneticLabel(v[3]), MagneticLabel(v[4]), MagneticLabel(v[5]));
  return print_oracle_value(cfg, "3jm", w, note, out);
}

int cmd_cg(const CliConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
  const auto v = parse_all(args, 6, "j1 m1 j2 m2 j m");
  for (int i = 0; i < 6; i += 2) {
    check_spin(v[i]);
    check_pair(v[i], v[i + 1]);
  }
  const SpinTriple t{SpinLabel(v[0]), SpinLabel(v[2]), SpinLabel(v[4])};
  std::optional<std::string> note;
  if (!t.admissible() || v[1] + v[3] != v[5]) note = kConditionsNote;
  const double c = clebsch_gordan(SpinLabel(v[0]), MagneticLabel(v[1]), SpinLabel(v[2]),
                                  MagneticLabel(v[3]), SpinLabel(v[4]), MagneticLabel(v[5]));
  return print_oracle_value(cfg, "cg", c, note, out);
}

// u = Rz(alpha) Ry(beta) Rz(gamma).
Matrix euler_su2(double alpha, double beta, double gamma) {
  const Complex i(0.0, 1.0);
  auto rz = [&](double a) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(-i * (a / 2));
    m(1, 1) = std::exp(i * (a / 2));
    return m;
  };
  Matrix ry(2, 2);
  ry << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
  return rz(alpha) * ry * rz(gamma);
}

int cmd_wignerd(const CliConfig& cfg, const std::string& j_text, const std::vector<double>& angles,
                std::ostream& out) {
  const int tj = parse_twice(j_text);
  check_spin(tj);
  Matrix u = Matrix::Identity(2, 2);
  if (!angles.empty()) u = euler_su2(angles[0], angles[1], angles[2]);
  return print_oracle_matrix(cfg, "wignerd", wigner_D_oracle(SpinLabel(tj), u, cfg.tolerance), out);
}

int cmd_symmetriser(const CliConfig& cfg, int n, std::ostream& out) {
  if (n < 1) throw InvalidSpinArgs("symmetriser needs at least one qubit");
  return print_oracle_matrix(cfg, "symmetriser", symmetriser_dense(n), out);
}

int cmd_simplify(const CliConfig& cfg, const std::string& path, const std::string& strategy_text,
                 bool trace, int max_steps, const std::string& output_path, std::ostream& out) {
  const Diagram d = read_zxd_file(path);
  const Strategy strategy = parse_strategy(strategy_text);
  const SimplifyResult res = simplify(d, strategy, max_steps);
  std::string check = "unverified-by-size";
  double residual = 0.0;
  if (d.n_inputs() + d.n_outputs() <= kVerifyWireLimit) {
    try {
      const EvalConfig e = eval_config(cfg);
      const Tensor before = evaluate(d, e);
      const Tensor after = evaluate(res.diagram, e);
      residual = max_abs_diff(before, after);
      double scale = 1.0;
      for (const Complex& z : before.data()) scale = std::max(scale, std::abs(z));
      check = residual <= cfg.tolerance * scale ? "verified" : "mismatch";
    } catch (const SizeExceeded&) {
      check = "unverified-by-size";
    }
  }
  if (!output_path.empty()) write_zxd_file(res.diagram, output_path);
  const int code = check == "mismatch" ? kExitFailure : kExitOk;
  if (cfg.output == OutputFormat::kJson) {
    Json j = header("simplify");
    j["strategy"] = strategy_name(strategy);
    j["nodes_before"] = d.nodes().size();
    j["nodes_after"] = res.diagram.nodes().size();
    j["steps"] = res.trace.size();
    j["cap_reached"] = res.reached_cap;
    j["check"] = check;
    if (check != "unverified-by-size") j["residual"] = residual;
    if (trace) {
      Json t = Json::array();
      for (const TraceEntry& e : res.trace) {
        t.push_back(Json{{"step", e.step}, {"rule", e.rule}, {"site", e.site}});
      }
      j["trace"] = t;
    }
    if (output_path.empty()) j["diagram"] = Json::parse(serialize(res.diagram));
    out << j.dump(2) << "\n";
    return code;
  }
  out << "strategy: " << strategy_name(strategy) << "\n";
  out << "nodes: " << d.nodes().size() << " -> " << res.diagram.nodes().size() << "\n";
  out << "steps: " << res.trace.size() << "\n";
  out << "check: " << check;
  if (check != "unverified-by-size") out << " (max residual " << fmt_double(residual) << ")";
  out << "\n";
  if (res.reached_cap) out << "note: cap reached after " << max_steps << " steps\n";
  if (trace) {
    out << "trace:\n";
    for (const TraceEntry& e : res.trace) out << "  " << e.str() << "\n";
  }
  if (output_path.empty()) {
    out << "diagram:\n" << serialize(res.diagram) << "\n";
  } else {
    out << "written: " << output_path << "\n";
  }
  return code;
}

int cmd_verify(const CliConfig& cfg, const std::string& suite, std::ostream& out) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    const auto all = suite_names();
    if (std::find(all.begin(), all.end(), suite) == all.end()) {
      throw ValidationError("unknown suite '" + suite + "'");
    }
    names = {suite};
  }
  bool ok = true;
  Json suites = Json::array();
  for (const auto& n : names) {
    const SuiteReport r = run_suite(n, suite_config(cfg));
    ok = ok && r.passed();
    if (cfg.output == OutputFormat::kJson) {
      Json s;
      s["suite"] = r.suite;
      s["passed"] = r.passed();
      Json checks = Json::array();
      for (const Check& c : r.checks) checks.push_back(check_json(c));
      s["checks"] = checks;
      suites.push_back(s);
    } else {
      out << "suite " << r.suite << "\n";
      for (const Check& c : r.checks) out << "  " << c.str() << "\n";
      out << "suite " << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " ("
          << r.checks.size() << " checks)\n";
    }
  }
  if (cfg.output == OutputFormat::kJson) {
    Json j = header("verify");
    j["passed"] = ok;
    j["suites"] = suites;
    out << j.dump(2) << "\n";
  } else {
    out << (ok ? "all checks passed" : "some checks failed") << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_demo(const CliConfig& cfg, const std::string& name, const DemoOptions& options,
             std::ostream& out) {
  const DemoReport r = run_demo(name, options, suite_config(cfg));
  if (cfg.output == OutputFormat::kJson) {
    Json j = header("demo");
    j["demo"] = r.demo;
    Json facts;
    for (const Fact& f : r.facts) facts[f.key] = fact_json(f);
    j["facts"] = facts;
    Json checks = Json::array();
    for (const Check& c : r.checks) checks.push_back(check_json(c));
    j["checks"] = checks;
    j["passed"] = r.passed();
    out << j.dump(2) << "\n";
  } else {
    out << "demo " << r.demo << "\n";
    for (const Fact& f : r.facts) out << "  " << f.str() << "\n";
    for (const Check& c : r.checks) out << "  " << c.str() << "\n";
    out << "demo " << r.demo << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
  return r.passed() ? kExitOk : kExitFailure;
}

int cmd_export_dot(const std::string& path, const std::string& output_path, std::ostream& out) {
  const std::string dot = to_dot(read_zxd_file(path));
  if (output_path.empty()) {
    out << dot;
    return kExitOk;
  }
  std::ofstream f(output_path);
  if (!f) throw ValidationError("cannot write '" + output_path + "'");
  f << dot;
  return kExitOk;
}

}  // namespace

int parse_twice(const std::string& text) {
  const auto bad = [&]() { return InvalidSpinArgs("'" + text + "' is not an integer or half-integer"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    std::size_t used_num = 0;
    std::size_t used_den = 0;
    long p = 0;
    long q = 0;
    try {
      p = std::stol(num, &used_num);
      q = std::stol(den, &used_den);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used_num != num.size() || used_den != den.size() || q <= 0 || (2 * p) % q != 0) {
      throw bad();
    }
    return static_cast<int>(2 * p / q);
  }
  char* end = nullptr;
  const double x = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(x) || std::abs(x) > 1e6) throw bad();
  const double twice = 2.0 * x;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) throw bad();
  return static_cast<int>(rounded);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  bool json = false;
  CLI::App app{"Mixed-dimensional ZX and Spin-ZX toolkit", "spinzx"};
  app.set_config("--config", "spinzx.toml", "Read options from a TOML file");
  app.add_option("--tolerance", cfg.tolerance, "Numerical tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--max-entries", cfg.max_entries, "Largest intermediate tensor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--json", json, "Machine-readable output");
  app.require_subcommand(1);
  app.fallthrough();

  std::string file;
  auto* eval = app.add_subcommand("eval", "Evaluate a .zxd diagram");
  eval->add_option("file", file, "Diagram file")->required();

  auto* oracle = app.add_subcommand("oracle", "Closed-form SU(2) values");
  oracle->require_subcommand(1);
  std::vector<std::string> spin_args;
  auto* o3jm = oracle->add_subcommand("3jm", "Wigner 3jm symbol: j1 j2 j3 m1 m2 m3");
  o3jm->add_option("values", spin_args)->allow_extra_args();
  auto* ocg = oracle->add_subcommand("cg", "Clebsch-Gordan coefficient: j1 m1 j2 m2 j m");
  ocg->add_option("values", spin_args)->allow_extra_args();
  std::string j_text;
  std::vector<double> angles;
  bool identity_flag = false;
  auto* owd = oracle->add_subcommand("wignerd", "Wigner D matrix of spin j");
  owd->add_option("j", j_text, "Spin")->required();
  auto* id_opt = owd->add_flag("--identity", identity_flag, "Use u = I (the default)");
  owd->add_option("--angles", angles, "Euler angles alpha beta gamma, u = Rz Ry Rz")
      ->expected(3)
      ->excludes(id_opt);
  int sym_n = 0;
  auto* osym = oracle->add_subcommand("symmetriser", "Dense symmetriser on n qubits");
  osym->add_option("n", sym_n, "Qubit count")->required();

  std::string strategy = "full";
  bool trace = false;
  int max_steps = 1000;
  std::string output_path;
  auto* simp = app.add_subcommand("simplify", "Simplify a .zxd diagram");
  simp->add_option("file", file, "Diagram file")->required();
  simp->add_option("--strategy", strategy, "fuse, spin or full")
      ->check(CLI::IsMember({"fuse", "spin", "full"}))
      ->capture_default_str();
  simp->add_flag("--trace", trace, "Print the rewrite trace");
  simp->add_option("--max-steps", max_steps, "Step cap")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simp->add_option("-o,--output", output_path, "Write the result to a file");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_choices));

  std::string demo_name;
  DemoOptions demo_options;
  auto* demo = app.add_subcommand("demo", "Run an application demo");
  demo->add_option("name", demo_name, "Demo name")->required()->check(CLI::IsMember(demo_names()));
  demo->add_option("--sites", demo_options.aklt_sites, "AKLT chain length")
      ->check(CLI::Range(2, 12))
      ->capture_default_str();
  demo->add_option("--qubits", demo_options.qml_qubits, "Ansatz qubits")->capture_default_str();
  demo->add_option("--layers", demo_options.qml_layers, "Ansatz layers")->capture_default_str();
  demo->add_option("--samples", demo_options.qml_samples, "Monte-Carlo samples")
      ->capture_default_str();

  auto* dot = app.add_subcommand("export-dot", "Write a diagram as Graphviz DOT");
  dot->add_option("file", file, "Diagram file")->required();
  dot->add_option("-o,--output", output_path, "Write to a file");

  try {
    // Negative decimals such as "-.5" would otherwise read as short options.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    for (std::string& a : reversed) {
      if (a.size() > 2 && a[0] == '-' && a[1] == '.' && std::isdigit(static_cast<unsigned char>(a[2]))) {
        a.insert(1, "0");
      }
    }
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (json) cfg.output = OutputFormat::kJson;

  try {
    if (eval->parsed()) return cmd_eval(cfg, file, out);
    if (o3jm->parsed()) return cmd_3jm(cfg, spin_args, out);
    if (ocg->parsed()) return cmd_cg(cfg, spin_args, out);
    if (owd->parsed()) return cmd_wignerd(cfg, j_text, angles, out);
    if (osym->parsed()) return cmd_symmetriser(cfg, sym_n, out);
    if (simp->parsed()) {
      return cmd_simplify(cfg, file, strategy, trace, max_steps, output_path, out);
    }
    if (verify->parsed()) return cmd_verify(cfg, suite, out);
    if (demo->parsed()) return cmd_demo(cfg, demo_name, demo_options, out);
    if (dot->parsed()) return cmd_export_dot(file, output_path, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SizeExceeded& e) {
    err << "size exceeded: " << e.what() << "\n";
    return kExitSize;
  } catch (const InvalidSpinArgs& e) {
    err << "invalid spin arguments: " << e.what() << "\n";
    return kExitSpinArgs;
  } catch (const InvalidMagnetic& e) {
    err << "invalid spin arguments: " << e.what() << "\n";
    return kExitSpinArgs;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace spinzx::cli
