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

#ifndef APOM_TOOLS_RUN_CONFIG_HPP_
#define APOM_TOOLS_RUN_CONFIG_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "apom/serialization.hpp"

namespace apom::cli {

enum class Kind { kInt, kReal, kBool, kText, kRealList, kTextList, kTypeList };

// Subcommand settings resolved as defaults < config file < explicit flags.
// Keys are snake_case; the matching flag is --key with dashes.
class RunConfig {
 public:
  // `provenance == false` keeps a key (paths, thread count) out of the
  // embedded report config so output bytes depend only on the experiment.
  void declare(const std::string& key, Json default_value, Kind kind,
               std::string help, bool provenance = true);

  // Rejects unknown keys and values of the wrong JSON type.
  void apply_file(const Json& doc);
  // Parses flag text according to the key's kind.
  void apply_flag(const std::string& key, const std::string& text);

  struct Entry {
    std::string key;
    Kind kind;
    std::string help;
    bool provenance;
  };
  const std::vector<Entry>& entries() const { return entries_; }

  // True once a config file or flag supplied the key.
  bool is_set(const std::string& key) const;
  const Json& resolved() const { return values_; }
  Json provenance() const;

  std::int64_t integer(const std::string& key) const;
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<std::string> texts(const std::string& key) const;
  const Json& raw(const std::string& key) const;

 private:
  const Entry& entry(const std::string& key) const;

  std::vector<Entry> entries_;
  std::vector<std::string> set_keys_;
  Json values_ = Json::object();
};

// "5:1:0.3,10:1:0.7" -> [[5,1,0.3],[10,1,0.7]]
Json parse_type_list(const std::string& text);

}  // namespace apom::cli

#endif  // APOM_TOOLS_RUN_CONFIG_HPP_
