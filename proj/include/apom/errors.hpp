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

#ifndef APOM_ERRORS_HPP_
#define APOM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace apom {

// Invalid caller-supplied parameters. The CLI maps this to exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A table or enumeration would exceed its configured size guard. Exit code 3.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke an API contract at run time (e.g. a policy asked to serve
// without enough energy, or a state outside a threshold table).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace apom

#endif  // APOM_ERRORS_HPP_
