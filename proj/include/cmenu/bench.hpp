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

// Benchmark harness over a directory of instance files.

#ifndef CMENU_BENCH_HPP_
#define CMENU_BENCH_HPP_

#include <optional>
#include <string>
#include <vector>

#include "cmenu/model.hpp"
#include "cmenu/model_io.hpp"
#include "cmenu/parallel.hpp"

namespace cmenu {

struct BenchRow {
  std::string instance;  // file name
  std::string det_mode;  // two-outcomes, const-types, ptas or none
  std::optional<Rational> det_value;
  std::optional<Rational> rand_value_e05;
  std::optional<Rational> rand_value_e01;
  std::optional<Rational> sup_ub;
  double wall_ms = 0;
  std::size_t iters = 0;  // column-generation iterations, both runs
  std::string error;      // empty unless something failed
};

// Which deterministic solver applies: two-outcomes when m = 2, const-types
// when n^l <= 1e6, ptas when m <= 3, otherwise none.
std::string PickDetMode(const Instance& x);

BenchRow BenchInstance(const std::string& name, const Instance& x, Exec exec = Exec::kParallel);

// Runs every *.json file in `dir` (sorted by name). Failures land in the
// row's error field and the run continues.
std::vector<BenchRow> RunBench(const std::string& dir, Exec exec = Exec::kParallel);

// {"schema": 1, "rows": [...]}
Json BenchReportJson(const std::vector<BenchRow>& rows);

}  // namespace cmenu

#endif  // CMENU_BENCH_HPP_
