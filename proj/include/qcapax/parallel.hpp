// Copyright 2026 The qcapax Authors
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

#ifndef QCAPAX_PARALLEL_HPP
#define QCAPAX_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qcapax {

/// Worker count: QCAPAX_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (QCAPAX_THREADS=0 also means auto).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// runs exactly once; the first exception thrown by any body is rethrown
/// after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qcapax

#endif  // QCAPAX_PARALLEL_HPP
