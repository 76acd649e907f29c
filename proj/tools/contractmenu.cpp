// Copyright 2026 The contract-menus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// contractmenu: command-line front end. Exit status 0 on success, 1 on solver
// failure (or a menu that fails verification), 2 on invalid input.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmenu/agent.hpp"
#include "cmenu/bench.hpp"
#include "cmenu/det_menu.hpp"
#include "cmenu/generators.hpp"
#include "cmenu/model_io.hpp"
#include "cmenu/rand_menu.hpp"

namespace {

using cmenu::Json;
using cmenu::Rational;

void Emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    cmenu::WriteFile(path, j.dump(2) + "\n");
  }
}

Json ValueJson(const Rational& v) {
  Json j;
  j["exact"] = cmenu::RationalToJson(v);
  j["approx"] = v.get_d();
  return j;
}

int Validate(const std::string& file) {
  cmenu::Instance x = cmenu::ReadInstance(file);
  cmenu::ValidationReport report = cmenu::Validate(x);
  if (!report.ok()) {
    for (const auto& v : report.violations) std::cerr << file << ": " << v << "\n";
    return 2;
  }
  std::cout << "ok: " << x.num_types() << " types, " << x.num_actions() << " actions, "
            << x.num_outcomes() << " outcomes";
  if (report.normalized.num_types() != x.num_types() ||
      report.normalized.num_outcomes() != x.num_outcomes()) {
    std::cout << " (normalized to " << report.normalized.num_types() << " types, "
              << report.normalized.num_outcomes() << " outcomes)";
  }
  std::cout << "\n";
  return 0;
}

int SolveDet(const std::string& file, std::string mode, const std::string& delta_text,
             const std::string& out, bool serial) {
  const cmenu::Instance x = cmenu::Normalize(cmenu::ReadInstance(file));
  const cmenu::Exec exec = serial ? cmenu::Exec::kSerial : cmenu::Exec::kParallel;
  if (mode == "auto") mode = cmenu::PickDetMode(x);
  Json result;
  result["mode"] = mode;
  cmenu::DeterministicMenu menu;
  Rational value;
  if (mode == "two-outcomes") {
    cmenu::DetResult r = cmenu::SolveTwoOutcomes(x);
    menu = r.menu;
    value = r.value;
  } else if (mode == "const-types") {
    cmenu::DetResult r = cmenu::SolveConstantTypes(x, exec);
    menu = r.menu;
    value = r.value;
  } else if (mode == "ptas") {
    cmenu::PtasOptions opt;
    opt.exec = exec;
    const Rational delta = cmenu::ParseRational(delta_text);
    cmenu::PtasResult r = cmenu::PtasConstantOutcomes(x, delta, opt);
    menu = r.menu;
    value = r.value;
    result["delta"] = cmenu::RationalToJson(delta);
    result["k"] = r.k;
    result["k_used"] = r.k_used;
    result["enumeration"] = r.enumeration;
  } else {
    throw cmenu::InvalidInput("no deterministic solver applies to this instance");
  }
  result["value"] = ValueJson(value);
  if (out.empty()) {
    result["menu"] = cmenu::MenuToJson(x, menu);
  } else {
    Emit(cmenu::MenuToJson(x, menu), out);
  }
  std::cout << result.dump(2) << "\n";
  return 0;
}

int SolveRand(const std::string& file, const std::string& eps_text, const std::string& trace,
              const std::string& out, const std::string& backend, bool simplify, bool serial) {
  const cmenu::Instance x = cmenu::Normalize(cmenu::ReadInstance(file));
  const Rational eps = cmenu::ParseRational(eps_text);
  cmenu::RandOptions opt;
  opt.exec = serial ? cmenu::Exec::kSerial : cmenu::Exec::kParallel;
  opt.backend = backend == "float" ? cmenu::Backend::kFloat : cmenu::Backend::kRational;
  cmenu::RandResult r = cmenu::SolveRandomized(x, eps, opt);
  cmenu::RandomizedMenu menu = simplify ? cmenu::SimplifyMenu(x, r.menu) : r.menu;
  if (!trace.empty()) {
    std::ofstream csv(trace);
    if (!csv) throw cmenu::InvalidInput("cannot write " + trace);
    cmenu::WriteTraceCsv(r.trace, csv);
  }
  Json result;
  result["epsilon"] = cmenu::RationalToJson(eps);
  result["value"] = ValueJson(cmenu::MenuValue(x, menu));
  result["dual_bound"] = ValueJson(r.dual_bound);
  result["sup_upper_bound"] = ValueJson(cmenu::SupUpperBound(r));
  result["iterations"] = r.iterations;
  result["converged"] = r.converged;
  result["payment_box"] = ValueJson(r.bound.c);
  if (out.empty()) {
    result["menu"] = cmenu::MenuToJson(x, menu);
  } else {
    Emit(cmenu::MenuToJson(x, menu), out);
  }
  std::cout << result.dump(2) << "\n";
  return r.converged ? 0 : 1;
}

int Verify(const std::string& instance_file, const std::string& menu_file, const std::string& tol_text) {
  const cmenu::Instance x = cmenu::Normalize(cmenu::ReadInstance(instance_file));
  const Json j = cmenu::ParseJsonExact(cmenu::ReadFile(menu_file));
  const Rational tol = cmenu::ParseRational(tol_text);
  cmenu::DsicReport report;
  Rational value;
  if (cmenu::IsRandomizedMenuJson(j)) {
    cmenu::RandomizedMenu menu = cmenu::RandomizedMenuFromJson(x, j);
    report = cmenu::VerifyDsic(x, menu, tol);
    value = cmenu::MenuValue(x, menu);
  } else {
    cmenu::DeterministicMenu menu = cmenu::DeterministicMenuFromJson(x, j);
    report = cmenu::VerifyDsic(x, menu, tol);
    value = cmenu::MenuValue(x, menu);
  }
  Json result;
  result["dsic"] = report.dsic;
  result["worst_slack"] = ValueJson(report.worst_slack);
  result["value"] = ValueJson(value);
  if (!report.dsic) {
    Json bad = Json::array();
    for (const auto& s : report.slacks) {
      if (s.slack < -tol) {
        bad.push_back({{"type", x.types[s.type]}, {"reported", x.types[s.reported]},
                       {"slack", cmenu::RationalToJson(s.slack)}});
      }
    }
    result["violations"] = bad;
  }
  std::cout << result.dump(2) << "\n";
  return report.dsic ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Menus of contracts for hidden-action principal-agent problems"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "Disable multithreading");

  std::string file, menu_file, out, trace, mode = "auto", delta = "1/4", eps, tol = "0",
                                           backend = "rational";
  bool simplify = false;

  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("file", file, "Instance JSON")->required();

  auto* det = app.add_subcommand("solve-det", "Optimal menu of deterministic contracts");
  det->add_option("file", file, "Instance JSON")->required();
  det->add_option("--mode", mode, "two-outcomes, const-types, ptas or auto")
      ->check(CLI::IsMember({"auto", "two-outcomes", "const-types", "ptas"}));
  det->add_option("--delta", delta, "Additive loss for the PTAS");
  det->add_option("--out", out, "Write the menu here instead of stdout");

  auto* rnd = app.add_subcommand("solve-rand", "Near-optimal menu of randomized contracts");
  rnd->add_option("file", file, "Instance JSON")->required();
  rnd->add_option("--epsilon", eps, "Additive loss")->required();
  rnd->add_option("--trace", trace, "Write iteration trace CSV");
  rnd->add_option("--out", out, "Write the menu here instead of stdout");
  rnd->add_option("--backend", backend, "LP arithmetic")->check(CLI::IsMember({"rational", "float"}));
  rnd->add_flag("--simplify", simplify, "Merge support contracts that induce the same action");

  auto* ver = app.add_subcommand("verify", "Check that a menu is DSIC and report its value");
  ver->add_option("instance", file, "Instance JSON")->required();
  ver->add_option("menu", menu_file, "Menu JSON")->required();
  ver->add_option("--tol", tol, "Allowed IC violation");

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string fixture, graph_file, alpha = "1/2", witness_out, meta_out;
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 0;
  double sparsity = 0;
  auto* g_fix = gen->add_option("--fixture", fixture, "Named fixture")->check(CLI::IsMember({"no-maximum"}));
  auto* g_rand = gen->add_option("--random", sizes, "L N M")->expected(3);
  auto* g_hard = gen->add_option("--hardness", graph_file, "Graph JSON for the hardness reduction");
  g_fix->excludes(g_rand)->excludes(g_hard);
  g_rand->excludes(g_hard);
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--sparsity", sparsity, "Chance of a zero probability");
  gen->add_option("--alpha", alpha, "Independent-set ratio for the hardness reduction");
  gen->add_option("--witness", witness_out, "Write the hardness witness menu here");
  gen->add_option("--meta", meta_out, "Write hardness metadata here");
  gen->add_option("--out", out, "Write the instance here instead of stdout");

  auto* bench = app.add_subcommand("bench", "Run all solvers over a directory of instances");
  std::string dir;
  bench->add_option("dir", dir, "Directory of instance JSON files")->required();
  bench->add_option("--out", out, "Report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return Validate(file);
    if (*det) return SolveDet(file, mode, delta, out, serial);
    if (*rnd) return SolveRand(file, eps, trace, out, backend, simplify, serial);
    if (*ver) return Verify(file, menu_file, tol);
    if (*gen) {
      if (!fixture.empty()) {
        Emit(cmenu::InstanceToJson(cmenu::NoMaximumFixture()), out);
      } else if (!sizes.empty()) {
        cmenu::RandomParams p;
        p.types = sizes[0];
        p.actions = sizes[1];
        p.outcomes = sizes[2];
        p.seed = seed;
        p.sparsity = sparsity;
        Emit(cmenu::InstanceToJson(cmenu::RandomInstance(p)), out);
      } else if (!graph_file.empty()) {
        cmenu::HardnessParams p;
        p.graph = cmenu::GraphFromJson(cmenu::ParseJsonExact(cmenu::ReadFile(graph_file)));
        p.alpha = cmenu::ParseRational(alpha);
        cmenu::HardnessInstance h = cmenu::GenerateHardness(p);
        Emit(cmenu::InstanceToJson(h.instance), out);
        if (!witness_out.empty() && h.witness) Emit(cmenu::MenuToJson(h.instance, *h.witness), witness_out);
        if (!meta_out.empty()) Emit(cmenu::HardnessMetadata(h), meta_out);
      } else {
        std::cerr << "gen: pick one of --fixture, --random, --hardness\n";
        return 2;
      }
      return 0;
    }
    if (*bench) {
      auto rows = cmenu::RunBench(dir, serial ? cmenu::Exec::kSerial : cmenu::Exec::kParallel);
      Emit(cmenu::BenchReportJson(rows), out);
      std::cout << rows.size() << " instances\n";
      return 0;
    }
  } catch (const cmenu::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
