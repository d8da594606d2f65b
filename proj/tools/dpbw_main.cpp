// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "dpbw/cli/app.hpp"

int main(int argc, char** argv) {
  return dpbw::cli::run(argc, argv, std::cout, std::cerr);
}
