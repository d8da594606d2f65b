// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/parallel.hpp"

#ifdef DPBW_USE_OPENMP
#include <omp.h>
#endif

namespace dpbw {

bool openmp_enabled() {
#ifdef DPBW_USE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef DPBW_USE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace detail {

void parallel_for_impl(std::int64_t count, void (*thunk)(void*, std::int64_t),
                       void* context) {
#ifdef DPBW_USE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) thunk(context, i);
#else
  for (std::int64_t i = 0; i < count; ++i) thunk(context, i);
#endif
}

}  // namespace detail
}  // namespace dpbw
