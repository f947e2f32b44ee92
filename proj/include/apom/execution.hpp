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

#ifndef APOM_EXECUTION_HPP_
#define APOM_EXECUTION_HPP_

namespace apom {

// kSerial is the reference path; kParallel distributes independent work
// items with OpenMP. Both produce identical results.
enum class Execution { kSerial, kParallel };

// Number of OpenMP threads used by kParallel (<= 0 keeps the runtime default).
void set_thread_count(int threads);
int thread_count();

}  // namespace apom

#endif  // APOM_EXECUTION_HPP_
