/*
 * Copyright 2026 the iebench authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iebench {

// Every parallel kernel in the library also runs in kSerial mode; that serial
// path is the reference the tests compare against, and the kernel-perf tool
// times both. Kernel bodies write only to their own output slots and draw
// randomness from per-unit seed streams, so both modes produce identical
// bytes for any thread count.
enum class ExecMode { kSerial, kOpenMP };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Runs fn(i) for i in [0, n). Bodies must not throw and must not share
// mutable state beyond their own slot.
template <typename F>
void parallel_for(std::size_t n, ExecMode mode, F&& fn) {
#ifdef _OPENMP
  if (mode == ExecMode::kOpenMP && n > 1) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  (void)mode;
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace iebench
