// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace dpbw::cli {

using Json = nlohmann::ordered_json;

// Decimal with 17 significant digits; NaN and infinities become null.
std::string format_number(double v);

// Pretty JSON with every float written by format_number. Arrays of scalars
// stay on one line.
std::string to_json_text(const Json& j);

// One CSV field: numbers via format_number (NaN as "nan"), strings quoted
// when they contain separators or quotes.
std::string csv_field(const Json& v);
std::string csv_line(const std::vector<Json>& fields);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

std::string read_file(const std::filesystem::path& path);

// "sha256:<hex>" over the given byte strings, each length-prefixed.
std::string inputs_digest(const std::vector<std::string>& parts);

}  // namespace dpbw::cli
