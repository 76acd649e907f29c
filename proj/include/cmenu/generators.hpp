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

// Instance generators.

#ifndef CMENU_GENERATORS_HPP_
#define CMENU_GENERATORS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmenu/model.hpp"
#include "cmenu/model_io.hpp"

namespace cmenu {

// Three types, three actions, four outcomes. Randomized menus get arbitrarily
// close to 3/4 here but never reach it.
Instance NoMaximumFixture();

struct RandomParams {
  std::size_t types = 2;
  std::size_t actions = 2;
  std::size_t outcomes = 2;
  std::uint64_t seed = 0;
  double sparsity = 0;  // chance that a probability is forced to zero
};

// Probabilities are multiples of 1/24 (so at most 24 outcomes); action 0 is
// free for every type. Same params, same instance.
Instance RandomInstance(const RandomParams& params);

// Undirected graph on vertices 1..vertices.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  int max_degree = 0;                 // k
  std::vector<int> independent_set;  // optional, for the witness menu
};

Graph GraphFromJson(const Json& j);

struct HardnessParams {
  Graph graph;
  Rational alpha = Rational(1, 2);
  unsigned precision_bits = 40;  // sin and cos are floored to this many bits
};

struct HardnessInstance {
  Instance instance;
  int l = 0;     // ceil(k / alpha)
  Rational rho;  // s^-3
  Rational eta;  // |independent set| / s
  // Actions each type really has; the rest are dominated copies of the
  // outside option with cost 1.
  std::vector<std::vector<int>> owned;
  std::optional<DeterministicMenu> witness;
  Rational claimed_bound;  // eta rho l 2^-l / 2, meaningful only for large s
};

// Throws InvalidInput on a degree violation, bad labels, or a supplied set
// that is not independent.
HardnessInstance GenerateHardness(const HardnessParams& params);

Json HardnessMetadata(const HardnessInstance& h);

}  // namespace cmenu

#endif  // CMENU_GENERATORS_HPP_
