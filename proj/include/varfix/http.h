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


#ifndef VARFIX_HTTP_H_
#define VARFIX_HTTP_H_

#include <string>
#include <utility>
#include <vector>

namespace varfix {

struct HttpResponse {
  int status = 0;
  std::string body;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

// POSTs a JSON body to an http:// (or https:// when built with TLS) URL.
// Throws TransportError when no response arrives, and for 429 and 5xx
// responses (retryable) or other non-2xx responses (not retryable).
HttpResponse HttpPostJson(const std::string& url, const std::string& body,
                          const HttpHeaders& headers, double timeout_seconds);

// Authorization header from the named environment variable; empty when the
// name is empty or the variable is unset.
HttpHeaders BearerFromEnv(const std::string& env_var);

}  // namespace varfix

#endif  // VARFIX_HTTP_H_
