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

#include "cmenu/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>

#include "cmenu/det_menu.hpp"
#include "cmenu/rand_menu.hpp"

namespace cmenu {

std::string PickDetMode(const Instance& x) {
  if (x.num_outcomes() == 2) return "two-outcomes";
  if (std::pow(static_cast<double>(x.num_actions()), static_cast<double>(x.num_types())) <= 1e6) {
    return "const-types";
  }
  if (x.num_outcomes() <= 3) return "ptas";
  return "none";
}

BenchRow BenchInstance(const std::string& name, const Instance& raw, Exec exec) {
  BenchRow row;
  row.instance = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Instance x = Normalize(raw);
    row.det_mode = PickDetMode(x);
    try {
      if (row.det_mode == "two-outcomes") {
        row.det_value = SolveTwoOutcomes(x).value;
      } else if (row.det_mode == "const-types") {
        row.det_value = SolveConstantTypes(x, exec).value;
      } else if (row.det_mode == "ptas") {
        PtasOptions opt;
        opt.exec = exec;
        row.det_value = PtasConstantOutcomes(x, Rational(1, 4), opt).value;
      }
    } catch (const Error& e) {
      row.error = std::string("deterministic: ") + e.what();
    }
    RandOptions opt;
    opt.exec = exec;
    RandResult r05 = SolveRandomized(x, Rational(1, 20), opt);
    row.rand_value_e05 = r05.value;
    RandResult r01 = SolveRandomized(x, Rational(1, 100), opt);
    row.rand_value_e01 = r01.value;
    row.sup_ub = SupUpperBound(r01);
    row.iters = r05.iterations + r01.iterations;
  } catch (const Error& e) {
    if (!row.error.empty()) row.error += "; ";
    row.error += e.what();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<BenchRow> RunBench(const std::string& dir, Exec exec) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InvalidInput("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchRow> rows;
  for (const auto& f : files) {
    try {
      rows.push_back(BenchInstance(f.filename().string(), ReadInstance(f.string()), exec));
    } catch (const Error& e) {
      BenchRow row;
      row.instance = f.filename().string();
      row.det_mode = "none";
      row.error = e.what();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

Json BenchReportJson(const std::vector<BenchRow>& rows) {
  auto num = [](const std::optional<Rational>& v) -> Json {
    return v ? Json(v->get_d()) : Json(nullptr);
  };
  Json out;
  out["schema"] = 1;
  out["rows"] = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["instance"] = r.instance;
    j["det_mode"] = r.det_mode;
    j["det_value"] = num(r.det_value);
    j["rand_value_e05"] = num(r.rand_value_e05);
    j["rand_value_e01"] = num(r.rand_value_e01);
    j["sup_ub"] = num(r.sup_ub);
    j["wall_ms"] = r.wall_ms;
    j["iters"] = r.iters;
    if (!r.error.empty()) j["error"] = r.error;
    out["rows"].push_back(std::move(j));
  }
  return out;
}

}  // namespace cmenu
