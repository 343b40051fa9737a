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

#ifndef SPARQLBENCH_UTIL_DIGEST_H_
#define SPARQLBENCH_UTIL_DIGEST_H_

#include <string>
#include <string_view>

namespace sparqlbench::util {

// Lowercase hex digests.
std::string sha512_hex(std::string_view data);
std::string sha256_hex(std::string_view data);

}  // namespace sparqlbench::util

#endif  // SPARQLBENCH_UTIL_DIGEST_H_
