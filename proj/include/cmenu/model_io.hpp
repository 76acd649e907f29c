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

// JSON serialization. Rationals are written either as JSON integers or as
// "num/den" strings, and read from integers, exact decimals or strings, so a
// write/read cycle never goes through floating point.

#ifndef CMENU_MODEL_IO_HPP_
#define CMENU_MODEL_IO_HPP_

#include <string>

#include "json.hpp"
#include "cmenu/model.hpp"

namespace cmenu {

using Json = nlohmann::json;

// Malformed file. `locus` is "line N" for syntax errors or a field path such
// as "dist/t1/a2[3]" for bad values.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& locus, const std::string& what)
      : InvalidInput(locus + ": " + what), locus_(locus) {}
  const std::string& locus() const { return locus_; }

 private:
  std::string locus_;
};

// Parses JSON text; every non-integer number is kept as its source text (a
// JSON string) so that decimals can be read exactly.
Json ParseJsonExact(const std::string& text);

Json RationalToJson(const Rational& q);
Rational RationalFromJson(const Json& j, const std::string& locus);

Json InstanceToJson(const Instance& instance);
Instance InstanceFromJson(const Json& j);

// Menus reference types and actions by name, so they need the instance.
Json MenuToJson(const Instance& instance, const DeterministicMenu& menu);
Json MenuToJson(const Instance& instance, const RandomizedMenu& menu);
bool IsRandomizedMenuJson(const Json& j);
DeterministicMenu DeterministicMenuFromJson(const Instance& instance, const Json& j);
RandomizedMenu RandomizedMenuFromJson(const Instance& instance, const Json& j);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

// read_instance does not validate; call Validate on the result.
Instance ReadInstance(const std::string& path);
void WriteInstance(const Instance& instance, const std::string& path);

}  // namespace cmenu

#endif  // CMENU_MODEL_IO_HPP_
