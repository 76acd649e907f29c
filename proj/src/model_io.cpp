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

#include "cmenu/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace cmenu {
namespace {

// DOM builder that stores floating-point literals as their raw text.
class ExactSax : public nlohmann::detail::json_sax_dom_parser<Json> {
 public:
  explicit ExactSax(Json& root) : json_sax_dom_parser(root, true) {}
  bool number_float(Json::number_float_t /*val*/, const Json::string_t& s) {
    Json::string_t copy = s;
    return json_sax_dom_parser::string(copy);
  }
};

std::size_t LineOf(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

const Json& Field(const Json& obj, const char* name, const std::string& locus) {
  if (!obj.is_object()) throw ParseError(locus, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(locus.empty() ? name : locus + "/" + name, "missing field");
  return *it;
}

std::vector<std::string> Names(const Json& obj, const char* name) {
  const Json& arr = Field(obj, name, "");
  if (!arr.is_array()) throw ParseError(name, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) {
      throw ParseError(std::string(name) + "[" + std::to_string(i) + "]", "expected a string");
    }
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

const Json& Keyed(const Json& obj, const std::string& key, const std::string& locus) {
  if (!obj.is_object()) throw ParseError(locus, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(locus + "/" + key, "missing entry");
  return *it;
}

void RejectUnknownKeys(const Json& obj, const std::vector<std::string>& keys,
                       const std::string& locus) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
      throw ParseError(locus + "/" + it.key(), "unknown identifier");
    }
  }
}

std::vector<Rational> RationalArray(const Json& arr, std::size_t expected, const std::string& locus) {
  if (!arr.is_array()) throw ParseError(locus, "expected an array");
  if (arr.size() != expected) {
    throw ParseError(locus, "expected " + std::to_string(expected) + " entries, got " +
                                std::to_string(arr.size()));
  }
  std::vector<Rational> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(RationalFromJson(arr[i], locus + "[" + std::to_string(i) + "]"));
  }
  return out;
}

int IndexOf(const std::vector<std::string>& names, const std::string& key, const std::string& locus) {
  auto it = std::find(names.begin(), names.end(), key);
  if (it == names.end()) throw ParseError(locus, "unknown identifier '" + key + "'");
  return static_cast<int>(it - names.begin());
}

}  // namespace

Json ParseJsonExact(const std::string& text) {
  Json root;
  ExactSax sax(root);
  try {
    Json::sax_parse(text, &sax);
  } catch (const Json::parse_error& e) {
    throw ParseError("line " + std::to_string(LineOf(text, e.byte)), e.what());
  }
  return root;
}

Json RationalToJson(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
    return Json(static_cast<std::int64_t>(q.get_num().get_si()));
  }
  return Json(ToString(q));
}

Rational RationalFromJson(const Json& j, const std::string& locus) {
  try {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) return Rational(std::to_string(j.get<std::uint64_t>()));
      return Rational(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) return ParseRational(j.get<std::string>());
  } catch (const InvalidInput& e) {
    throw ParseError(locus, e.what());
  }
  throw ParseError(locus, "expected a rational");
}

Json InstanceToJson(const Instance& x) {
  Json j;
  j["types"] = x.types;
  j["actions"] = x.actions;
  j["outcomes"] = x.outcomes;
  Json mu = Json::object(), dist = Json::object(), cost = Json::object(), reward = Json::object();
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    mu[x.types[t]] = RationalToJson(x.mu[t]);
    for (std::size_t a = 0; a < x.num_actions(); ++a) {
      const std::string key = x.types[t] + "/" + x.actions[a];
      Json row = Json::array();
      for (const auto& f : x.dist[t][a]) row.push_back(RationalToJson(f));
      dist[key] = std::move(row);
      cost[key] = RationalToJson(x.cost[t][a]);
    }
  }
  for (std::size_t o = 0; o < x.num_outcomes(); ++o) reward[x.outcomes[o]] = RationalToJson(x.reward[o]);
  j["mu"] = std::move(mu);
  j["dist"] = std::move(dist);
  j["cost"] = std::move(cost);
  j["reward"] = std::move(reward);
  return j;
}

Instance InstanceFromJson(const Json& j) {
  if (!j.is_object()) throw ParseError("line 1", "instance must be a JSON object");
  Instance x;
  x.types = Names(j, "types");
  x.actions = Names(j, "actions");
  x.outcomes = Names(j, "outcomes");
  const std::size_t m = x.outcomes.size();

  const Json& mu = Field(j, "mu", "");
  RejectUnknownKeys(mu, x.types, "mu");
  for (const auto& t : x.types) x.mu.push_back(RationalFromJson(Keyed(mu, t, "mu"), "mu/" + t));

  const Json& reward = Field(j, "reward", "");
  RejectUnknownKeys(reward, x.outcomes, "reward");
  for (const auto& o : x.outcomes) {
    x.reward.push_back(RationalFromJson(Keyed(reward, o, "reward"), "reward/" + o));
  }

  const Json& dist = Field(j, "dist", "");
  const Json& cost = Field(j, "cost", "");
  std::vector<std::string> pair_keys;
  for (const auto& t : x.types) {
    for (const auto& a : x.actions) pair_keys.push_back(t + "/" + a);
  }
  RejectUnknownKeys(dist, pair_keys, "dist");
  RejectUnknownKeys(cost, pair_keys, "cost");
  for (const auto& t : x.types) {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> costs;
    for (const auto& a : x.actions) {
      const std::string key = t + "/" + a;
      rows.push_back(RationalArray(Keyed(dist, key, "dist"), m, "dist/" + key));
      costs.push_back(RationalFromJson(Keyed(cost, key, "cost"), "cost/" + key));
    }
    x.dist.push_back(std::move(rows));
    x.cost.push_back(std::move(costs));
  }
  return x;
}

Json MenuToJson(const Instance& x, const DeterministicMenu& menu) {
  Json j;
  j["kind"] = "deterministic";
  Json entries = Json::object();
  for (std::size_t t = 0; t < menu.entries.size(); ++t) {
    Json row = Json::array();
    for (const auto& v : menu.entries[t]) row.push_back(RationalToJson(v));
    entries[x.types[t]] = std::move(row);
  }
  j["entries"] = std::move(entries);
  if (menu.recommendations) {
    Json recs = Json::object();
    for (std::size_t t = 0; t < menu.recommendations->size(); ++t) {
      recs[x.types[t]] = x.actions[(*menu.recommendations)[t]];
    }
    j["recommendations"] = std::move(recs);
  }
  return j;
}

Json MenuToJson(const Instance& x, const RandomizedMenu& menu) {
  Json j;
  j["kind"] = "randomized";
  Json entries = Json::object();
  for (std::size_t t = 0; t < menu.entries.size(); ++t) {
    Json support = Json::array();
    for (const auto& wc : menu.entries[t]) {
      Json pay = Json::array();
      for (const auto& v : wc.pay) pay.push_back(RationalToJson(v));
      support.push_back({{"pay", std::move(pay)}, {"weight", RationalToJson(wc.weight)}});
    }
    entries[x.types[t]] = std::move(support);
  }
  j["entries"] = std::move(entries);
  return j;
}

bool IsRandomizedMenuJson(const Json& j) {
  if (!j.is_object()) return false;
  if (auto kind = j.find("kind"); kind != j.end() && kind->is_string()) {
    return kind->get<std::string>() == "randomized";
  }
  auto entries = j.find("entries");
  if (entries == j.end() || !entries->is_object() || entries->empty()) return false;
  const Json& first = entries->begin().value();
  return first.is_array() && !first.empty() && first[0].is_object();
}

DeterministicMenu DeterministicMenuFromJson(const Instance& x, const Json& j) {
  const Json& entries = Field(j, "entries", "");
  RejectUnknownKeys(entries, x.types, "entries");
  DeterministicMenu menu;
  for (const auto& t : x.types) {
    menu.entries.push_back(
        RationalArray(Keyed(entries, t, "entries"), x.num_outcomes(), "entries/" + t));
  }
  if (auto recs = j.find("recommendations"); recs != j.end() && !recs->is_null()) {
    RejectUnknownKeys(*recs, x.types, "recommendations");
    std::vector<int> out;
    for (const auto& t : x.types) {
      const Json& a = Keyed(*recs, t, "recommendations");
      if (!a.is_string()) throw ParseError("recommendations/" + t, "expected an action name");
      out.push_back(IndexOf(x.actions, a.get<std::string>(), "recommendations/" + t));
    }
    menu.recommendations = std::move(out);
  }
  return menu;
}

RandomizedMenu RandomizedMenuFromJson(const Instance& x, const Json& j) {
  const Json& entries = Field(j, "entries", "");
  RejectUnknownKeys(entries, x.types, "entries");
  RandomizedMenu menu;
  for (const auto& t : x.types) {
    const Json& support = Keyed(entries, t, "entries");
    const std::string locus = "entries/" + t;
    if (!support.is_array()) throw ParseError(locus, "expected an array of {pay, weight}");
    std::vector<WeightedContract> list;
    for (std::size_t i = 0; i < support.size(); ++i) {
      const std::string item = locus + "[" + std::to_string(i) + "]";
      WeightedContract wc;
      wc.pay = RationalArray(Field(support[i], "pay", item), x.num_outcomes(), item + "/pay");
      wc.weight = RationalFromJson(Field(support[i], "weight", item), item + "/weight");
      list.push_back(std::move(wc));
    }
    menu.entries.push_back(std::move(list));
  }
  return menu;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << contents;
}

Instance ReadInstance(const std::string& path) {
  return InstanceFromJson(ParseJsonExact(ReadFile(path)));
}

void WriteInstance(const Instance& instance, const std::string& path) {
  WriteFile(path, InstanceToJson(instance).dump(2) + "\n");
}

}  // namespace cmenu
