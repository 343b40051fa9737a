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

#ifndef SPARQLBENCH_UTIL_HTTP_H_
#define SPARQLBENCH_UTIL_HTTP_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace sparqlbench::util {

// Connection could not be established, or the exchange broke off.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public TransportError {
 public:
  using TransportError::TransportError;
};

struct HttpResponse {
  int status = 0;
  std::string body;
  std::string content_type;
};

struct HttpRequest {
  std::string url;  // absolute http(s) URL
  std::string body;
  std::string content_type;
  std::map<std::string, std::string> headers;
  std::chrono::milliseconds timeout{30000};
};

// Issues a POST. Non-2xx responses are returned, not thrown.
HttpResponse http_post(const HttpRequest& request);

bool is_http_url(const std::string& url);

// Number of requests issued through http_post in this process. Lets tests
// assert that offline code paths never touch the network.
std::uint64_t http_request_count();

// application/x-www-form-urlencoded encoding of one value.
std::string form_encode(const std::string& value);

}  // namespace sparqlbench::util

#endif  // SPARQLBENCH_UTIL_HTTP_H_
