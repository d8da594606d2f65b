// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <exception>
#include <vector>

namespace dpbw {

// Campaign kernels come in two flavours sharing one per-index body: a plain
// loop (the reference) and an OpenMP loop. Results are written to
// index-addressed slots and reduced serially afterwards, so both flavours
// produce bit-identical output.
enum class Execution { kSerial, kParallel };

bool openmp_enabled();
int max_threads();

namespace detail {
void parallel_for_impl(std::int64_t count, void (*thunk)(void*, std::int64_t),
                       void* context);
}  // namespace detail

template <typename Body>
void for_each_index(Execution exec, std::int64_t count, Body&& body) {
  if (exec == Execution::kSerial || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  // Exceptions must not cross the OpenMP region boundary.
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  struct Context {
    Body* body;
    std::vector<std::exception_ptr>* errors;
  } ctx{&body, &errors};
  detail::parallel_for_impl(
      count,
      [](void* raw, std::int64_t i) {
        auto* c = static_cast<Context*>(raw);
        try {
          (*c->body)(i);
        } catch (...) {
          (*c->errors)[static_cast<std::size_t>(i)] = std::current_exception();
        }
      },
      &ctx);
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace dpbw
