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

// Problem instances, contracts and menus for the Bayesian hidden-action
// principal-agent model. Everything here is exact; solvers convert to floating
// point on their own if they want to.

#ifndef CMENU_MODEL_HPP_
#define CMENU_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmenu/rational.hpp"

namespace cmenu {

// A payment per outcome. Limited liability means every entry is >= 0.
using Contract = std::vector<Rational>;

struct Instance {
  std::vector<std::string> types;     // Theta, size l
  std::vector<std::string> actions;   // A, size n
  std::vector<std::string> outcomes;  // Omega, size m
  std::vector<Rational> mu;           // [type]
  // dist[type][action][outcome]
  std::vector<std::vector<std::vector<Rational>>> dist;
  std::vector<std::vector<Rational>> cost;  // [type][action]
  std::vector<Rational> reward;             // [outcome]

  std::size_t num_types() const { return types.size(); }
  std::size_t num_actions() const { return actions.size(); }
  std::size_t num_outcomes() const { return outcomes.size(); }

  bool operator==(const Instance&) const = default;
};

struct DeterministicMenu {
  std::vector<Contract> entries;  // one per type
  // Recommended actions, as in an approximate menu of contract-action pairs.
  std::optional<std::vector<int>> recommendations;

  bool operator==(const DeterministicMenu&) const = default;
};

struct WeightedContract {
  Contract pay;
  Rational weight;

  bool operator==(const WeightedContract&) const = default;
};

struct RandomizedMenu {
  std::vector<std::vector<WeightedContract>> entries;  // one list per type

  bool operator==(const RandomizedMenu&) const = default;
};

// Wraps each deterministic entry as a point mass.
RandomizedMenu ToRandomized(const DeterministicMenu& menu);

struct ValidationReport {
  std::vector<std::string> violations;
  // Copy with zero-mass types and never-occurring outcomes removed. Only
  // meaningful when `violations` is empty.
  Instance normalized;

  bool ok() const { return violations.empty(); }
};

// Checks every structural invariant and Assumption 1 (some action costs zero
// for every type). Never throws.
ValidationReport Validate(const Instance& instance);

// Validates and returns the normalized copy, or throws InvalidInput listing
// the violations.
Instance Normalize(const Instance& instance);

// Total bit-length of all numerators and denominators in the instance.
std::size_t InstanceSize(const Instance& instance);

// Index of a zero-cost action shared by all types, or -1 if none exists.
int ZeroCostAction(const Instance& instance);

// Menu shape checks shared by the solvers and the CLI. Throw InvalidInput.
void CheckMenuShape(const Instance& instance, const DeterministicMenu& menu);
void CheckMenuShape(const Instance& instance, const RandomizedMenu& menu);

// Expected value of a vector over the outcome distribution of (type, action).
Rational Expect(const Instance& instance, std::size_t type, std::size_t action,
                const std::vector<Rational>& values);

}  // namespace cmenu

#endif  // CMENU_MODEL_HPP_
