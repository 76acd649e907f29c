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

// Drives the contractmenu binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cmenu/agent.hpp"
#include "cmenu/model_io.hpp"
#include "doctest.h"

namespace cmenu {
namespace {

namespace fs = std::filesystem;

const std::string kBin = CONTRACTMENU_BIN;
const std::string kData = FIXTURE_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path Scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("cmenu_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run Exec(const std::string& args) {
  const std::string out = (Scratch() / "stdout.txt").string(), err = (Scratch() / "stderr.txt").string();
  const std::string cmd = "'" + kBin + "' " + args + " > '" + out + "' 2> '" + err + "'";
  const int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, ReadFile(out), ReadFile(err)};
  return r;
}

std::string P(const std::string& name) { return "'" + (Scratch() / name).string() + "'"; }

TEST_CASE("gen then validate") {
  Run g = Exec("gen --fixture no-maximum --out " + P("fixture.json"));
  REQUIRE(g.code == 0);
  CHECK(Exec("validate " + P("fixture.json")).code == 0);
  for (int seed = 0; seed < 10; ++seed) {
    const std::string args = "gen --random " + std::to_string(1 + seed % 3) + " 3 " + std::to_string(2 + seed % 3) +
                             " --seed " + std::to_string(seed) + " --sparsity 0.3 --out " + P("r.json");
    REQUIRE(Exec(args).code == 0);
    CHECK(Exec("validate " + P("r.json")).code == 0);
  }
  Run h = Exec("gen --hardness '" + kData + "/c5.json' --alpha 1/2 --out " + P("c5_instance.json") + " --witness " +
               P("c5_witness.json") + " --meta " + P("c5_meta.json"));
  REQUIRE(h.code == 0);
  CHECK(Exec("validate " + P("c5_instance.json")).code == 0);
  Json meta = ParseJsonExact(ReadFile((Scratch() / "c5_meta.json").string()));
  CHECK(meta["l"] == 4);
  CHECK(meta["rho"] == "1/125");
  CHECK(Exec("verify " + P("c5_instance.json") + " " + P("c5_witness.json")).code <= 1);
}

TEST_CASE("gen output is the same every time") {
  REQUIRE(Exec("gen --fixture no-maximum --out " + P("a.json")).code == 0);
  REQUIRE(Exec("gen --fixture no-maximum --out " + P("b.json")).code == 0);
  CHECK(ReadFile((Scratch() / "a.json").string()) == ReadFile((Scratch() / "b.json").string()));
}

TEST_CASE("solve-rand on the fixture, then verify") {
  REQUIRE(Exec("gen --fixture no-maximum --out " + P("fixture.json")).code == 0);
  Run r = Exec("solve-rand " + P("fixture.json") + " --epsilon 0.05 --out " + P("menu.json") + " --trace " +
               P("trace.csv"));
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["value"]["approx"].get<double>() >= 0.7);
  CHECK(j["converged"] == true);
  Run v = Exec("verify " + P("fixture.json") + " " + P("menu.json"));
  CHECK(v.code == 0);
  CHECK(ParseJsonExact(v.out)["dsic"] == true);
  std::string csv = ReadFile((Scratch() / "trace.csv").string());
  CHECK(csv.rfind("iter,primal,dual,new_columns\n", 0) == 0);

  Run s = Exec("solve-rand " + P("fixture.json") + " --epsilon 1/20 --backend float --simplify --out " +
               P("menu_f.json"));
  REQUIRE(s.code == 0);
  CHECK(Exec("verify " + P("fixture.json") + " " + P("menu_f.json")).code == 0);
}

TEST_CASE("solve-det and verify") {
  REQUIRE(Exec("gen --fixture no-maximum --out " + P("fixture.json")).code == 0);
  Run d = Exec("solve-det " + P("fixture.json") + " --out " + P("det.json"));
  REQUIRE(d.code == 0);
  Json j = ParseJsonExact(d.out);
  CHECK(j["mode"] == "const-types");
  CHECK(j["value"]["exact"] == "2/3");
  CHECK(Exec("verify " + P("fixture.json") + " " + P("det.json")).code == 0);

  Run p = Exec("solve-det '" + kData + "/bench/random_2_3_2.json' --mode ptas --delta 1/4");
  CHECK(p.code == 0);
}

TEST_CASE("a menu that is not DSIC fails verification") {
  REQUIRE(Exec("gen --fixture no-maximum --out " + P("fixture.json")).code == 0);
  Instance x = ReadInstance((Scratch() / "fixture.json").string());
  // the second type would rather take the first type's pay on the fourth outcome
  DeterministicMenu menu{{{0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}, std::nullopt};
  WriteFile((Scratch() / "bad.json").string(), MenuToJson(x, menu).dump());
  Run v = Exec("verify " + P("fixture.json") + " " + P("bad.json"));
  CHECK(v.code == 1);
  CHECK(ParseJsonExact(v.out)["dsic"] == false);
}

TEST_CASE("usage and input errors exit with 2") {
  Run r = Exec("solve-det '" + kData + "/three_outcomes.json' --mode two-outcomes");
  CHECK(r.code == 2);
  CHECK(r.err.find("dimension") != std::string::npos);
  CHECK(Exec("").code == 2);
  CHECK(Exec("solve-rand '" + kData + "/three_outcomes.json'").code == 2);  // --epsilon missing
  CHECK(Exec("validate " + P("missing.json")).code == 2);
  WriteFile((Scratch() / "broken.json").string(), "{\"types\": [");
  CHECK(Exec("validate " + P("broken.json")).code == 2);
  CHECK(Exec("gen").code == 2);
}

TEST_CASE("bench") {
  fs::create_directories(Scratch() / "empty");
  Run e = Exec("bench " + P("empty") + " --out " + P("empty.json"));
  REQUIRE(e.code == 0);
  Json empty = ParseJsonExact(ReadFile((Scratch() / "empty.json").string()));
  CHECK(empty["schema"] == 1);
  CHECK(empty["rows"].empty());

  Run b = Exec("bench '" + kData + "/bench' --out " + P("report.json"));
  REQUIRE(b.code == 0);
  Json report = Json::parse(ReadFile((Scratch() / "report.json").string()));
  REQUIRE(report["rows"].size() == 3);
  for (const auto& row : report["rows"]) {
    for (const char* key : {"instance", "det_mode", "det_value", "rand_value_e05", "rand_value_e01", "sup_ub",
                            "wall_ms", "iters"}) {
      CHECK(row.contains(key));
    }
    if (row["instance"] == "no_maximum.json") {
      CHECK(row["rand_value_e05"].get<double>() > row["det_value"].get<double>());
      CHECK(row["rand_value_e01"].get<double>() > row["det_value"].get<double>());
    }
  }
}

}  // namespace
}  // namespace cmenu
