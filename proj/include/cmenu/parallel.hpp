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

#ifndef CMENU_PARALLEL_HPP_
#define CMENU_PARALLEL_HPP_

namespace cmenu {

// Enumeration kernels have an OpenMP path and a plain serial path. Both must
// return identical results; the serial one is kept as the reference.
enum class Exec { kSerial, kParallel };

// Number of OpenMP threads the parallel path will use (1 without OpenMP).
int MaxThreads();

}  // namespace cmenu

#endif  // CMENU_PARALLEL_HPP_
