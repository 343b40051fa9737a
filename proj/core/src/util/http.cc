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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "sparqlbench/util/http.h"

#include <cctype>
#include <cstdio>

#include "httplib.h"

namespace sparqlbench::util {

namespace {

std::atomic<std::uint64_t> g_request_count{0};

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // path and query, at least "/"
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("not an absolute URL: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

bool is_http_url(const std::string& url) {
  auto check = [&url](std::string_view scheme) {
    return url.size() > scheme.size() && url.starts_with(scheme) &&
           url.find_first_of("/?#", scheme.size()) != scheme.size();
  };
  return check("http://") || check("https://");
}

std::uint64_t http_request_count() { return g_request_count.load(); }

std::string form_encode(const std::string& value) {
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else if (c == ' ') {
      out += '+';
    } else {
      char buf[4];
      std::snprintf(buf, sizeof(buf), "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

HttpResponse http_post(const HttpRequest& request) {
  if (!is_http_url(request.url)) throw TransportError("not an http(s) URL: " + request.url);
  ++g_request_count;
  SplitUrl parts = split_url(request.url);
  httplib::Client client(parts.origin);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(request.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_follow_location(true);
  httplib::Headers headers;
  for (const auto& [k, v] : request.headers) headers.emplace(k, v);
  auto started = std::chrono::steady_clock::now();
  auto result = client.Post(parts.path, headers, request.body, request.content_type);
  if (!result) {
    httplib::Error err = result.error();
    std::string what = "POST " + request.url + " failed: " + httplib::to_string(err);
    // httplib reports an expired read timeout as a plain read error.
    bool expired = std::chrono::steady_clock::now() - started >= request.timeout;
    if (err == httplib::Error::ConnectionTimeout || (err == httplib::Error::Read && expired)) {
      throw TimeoutError(what);
    }
    throw TransportError(what);
  }
  HttpResponse response;
  response.status = result->status;
  response.body = result->body;
  response.content_type = result->get_header_value("Content-Type");
  return response;
}

}  // namespace sparqlbench::util
