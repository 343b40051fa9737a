// Copyright 2026 The sparqlbench Authors.
//
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

#ifndef SPARQLBENCH_UTIL_TEXT_H_
#define SPARQLBENCH_UTIL_TEXT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sparqlbench::util {

std::string utf8_encode(char32_t code_point);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

// Throws std::runtime_error on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Lines of a file, without terminators; empty lines are kept.
std::vector<std::string> split_lines(std::string_view text);

// Fixed-point rendering with `digits` decimals, rounding half away from zero
// on the decimal value closest to `value`.
std::string format_fixed(double value, int digits);

// Replaces every "{{key}}" occurrence.
std::string replace_all(std::string text, std::string_view from, std::string_view to);

}  // namespace sparqlbench::util

#endif  // SPARQLBENCH_UTIL_TEXT_H_
