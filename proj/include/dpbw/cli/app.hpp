// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace dpbw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

const char* version();

// Full command-line entry point. `out` receives the human summary, `err`
// diagnostics; the machine report goes to the --out file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dpbw::cli
