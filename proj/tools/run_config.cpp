// Copyright 2026 The APOM Simulator Authors
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

#include "run_config.hpp"

#include <charconv>
#include <sstream>

#include "apom/errors.hpp"

namespace apom::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_real(const std::string& key, const std::string& text) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParameterError("--" + key + ": '" + text + "' is not a number");
  }
  return x;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::int64_t x = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParameterError("--" + key + ": '" + text + "' is not an integer");
  }
  return x;
}

bool matches(Kind kind, const Json& v) {
  switch (kind) {
    case Kind::kInt:
      return v.is_number_integer();
    case Kind::kReal:
      return v.is_number();
    case Kind::kBool:
      return v.is_boolean();
    case Kind::kText:
      return v.is_string();
    case Kind::kRealList:
      if (!v.is_array()) return false;
      for (const auto& x : v) {
        if (!x.is_number()) return false;
      }
      return true;
    case Kind::kTextList:
      if (!v.is_array()) return false;
      for (const auto& x : v) {
        if (!x.is_string()) return false;
      }
      return true;
    case Kind::kTypeList:
      if (!v.is_array()) return false;
      for (const auto& t : v) {
        if (!t.is_array() || t.size() != 3) return false;
        for (const auto& x : t) {
          if (!x.is_number()) return false;
        }
      }
      return true;
  }
  return false;
}

}  // namespace

Json parse_type_list(const std::string& text) {
  Json out = Json::array();
  for (const auto& item : split(text, ',')) {
    const auto fields = split(item, ':');
    if (fields.size() != 3) {
      throw ParameterError("--types entries are value:weight:probability, got '" + item + "'");
    }
    out.push_back(Json::array({parse_real("types", fields[0]), parse_real("types", fields[1]),
                               parse_real("types", fields[2])}));
  }
  return out;
}

void RunConfig::declare(const std::string& key, Json default_value, Kind kind,
                        std::string help, bool provenance) {
  entries_.push_back({key, kind, std::move(help), provenance});
  values_[key] = std::move(default_value);
}

const RunConfig::Entry& RunConfig::entry(const std::string& key) const {
  for (const auto& e : entries_) {
    if (e.key == key) return e;
  }
  throw ParameterError("unknown config key '" + key + "'");
}

void RunConfig::apply_file(const Json& doc) {
  if (!doc.is_object()) throw ParameterError("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    const Entry& e = entry(key);
    if (!matches(e.kind, value)) {
      throw ParameterError("config key '" + key + "' has the wrong type");
    }
    values_[key] = value;
    set_keys_.push_back(key);
  }
}

void RunConfig::apply_flag(const std::string& key, const std::string& text) {
  const Entry& e = entry(key);
  Json value;
  switch (e.kind) {
    case Kind::kInt:
      value = parse_int(key, text);
      break;
    case Kind::kReal:
      value = parse_real(key, text);
      break;
    case Kind::kBool:
      if (text == "true" || text == "1") {
        value = true;
      } else if (text == "false" || text == "0") {
        value = false;
      } else {
        throw ParameterError("--" + key + ": expected true or false");
      }
      break;
    case Kind::kText:
      value = text;
      break;
    case Kind::kRealList:
      value = Json::array();
      for (const auto& part : split(text, ',')) value.push_back(parse_real(key, part));
      break;
    case Kind::kTextList:
      value = Json::array();
      for (const auto& part : split(text, ',')) {
        if (part.empty()) throw ParameterError("--" + key + ": empty list item");
        value.push_back(part);
      }
      break;
    case Kind::kTypeList:
      value = parse_type_list(text);
      break;
  }
  values_[key] = std::move(value);
  set_keys_.push_back(key);
}

bool RunConfig::is_set(const std::string& key) const {
  return std::find(set_keys_.begin(), set_keys_.end(), key) != set_keys_.end();
}

Json RunConfig::provenance() const {
  Json out = Json::object();
  for (const auto& e : entries_) {
    if (e.provenance) out[e.key] = values_.at(e.key);
  }
  return out;
}

const Json& RunConfig::raw(const std::string& key) const {
  entry(key);
  return values_.at(key);
}

std::int64_t RunConfig::integer(const std::string& key) const {
  return raw(key).get<std::int64_t>();
}
double RunConfig::real(const std::string& key) const { return raw(key).get<double>(); }
bool RunConfig::flag(const std::string& key) const { return raw(key).get<bool>(); }
std::string RunConfig::text(const std::string& key) const {
  return raw(key).get<std::string>();
}
std::vector<double> RunConfig::reals(const std::string& key) const {
  return raw(key).get<std::vector<double>>();
}
std::vector<std::string> RunConfig::texts(const std::string& key) const {
  return raw(key).get<std::vector<std::string>>();
}

}  // namespace apom::cli
