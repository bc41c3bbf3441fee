// Copyright 2026 The Varfix Authors.
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


#include "varfix/http.h"

#include <cstdlib>

#include <httplib.h>

#include "varfix/errors.h"

namespace varfix {

namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl SplitUrl(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("URL without scheme: " + url);
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ValidationError("unsupported URL scheme: " + url);
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") {
    throw ValidationError("this build has no TLS support: " + url);
  }
#endif
  const std::size_t path_start = url.find('/', scheme_end + 3);
  ParsedUrl out;
  out.origin = url.substr(0, path_start);
  out.path = path_start == std::string::npos ? "/" : url.substr(path_start);
  return out;
}

}  // namespace

HttpResponse HttpPostJson(const std::string& url, const std::string& body,
                          const HttpHeaders& headers, double timeout_seconds) {
  ParsedUrl parsed = SplitUrl(url);
  httplib::Client client(parsed.origin);
  const auto secs = static_cast<time_t>(timeout_seconds);
  const auto usecs = static_cast<time_t>((timeout_seconds - secs) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  httplib::Headers hdrs;
  for (const auto& [k, v] : headers) hdrs.emplace(k, v);
  auto res = client.Post(parsed.path, hdrs, body, "application/json");
  if (!res) {
    throw TransportError("POST " + url + " failed: " +
                         httplib::to_string(res.error()));
  }
  HttpResponse out{res->status, res->body};
  if (out.status == 429 || out.status >= 500) {
    throw TransportError("POST " + url + " returned " +
                         std::to_string(out.status));
  }
  if (out.status < 200 || out.status >= 300) {
    throw TransportError("POST " + url + " returned " +
                             std::to_string(out.status) + ": " +
                             out.body.substr(0, 200),
                         /*retryable=*/false);
  }
  return out;
}

HttpHeaders BearerFromEnv(const std::string& env_var) {
  if (env_var.empty()) return {};
  const char* value = std::getenv(env_var.c_str());
  if (value == nullptr || *value == '\0') return {};
  return {{"Authorization", std::string("Bearer ") + value}};
}

}  // namespace varfix
