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

#ifndef APOM_TOOLS_COMMANDS_HPP_
#define APOM_TOOLS_COMMANDS_HPP_

#include <iosfwd>

namespace apom::cli {

// Exit codes: 0 success, 2 usage or parameter error, 3 resource error,
// 1 internal failure (a verified property did not hold).
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apom::cli

#endif  // APOM_TOOLS_COMMANDS_HPP_
