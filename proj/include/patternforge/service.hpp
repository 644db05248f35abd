// Copyright 2026 The PatternForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef PATTERNFORGE_SERVICE_HPP_
#define PATTERNFORGE_SERVICE_HPP_

#include <memory>
#include <string>

#include "patternforge/session.hpp"

namespace patternforge {

// Local HTTP/JSON front end over a SessionStore. Routes and payloads are
// listed in docs/wire.md.
class HttpService {
 public:
  struct Response {
    int status = 200;
    std::string body;  // JSON
  };

  explicit HttpService(std::shared_ptr<SessionStore> store);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Socket-free dispatch; `target` is the path plus an optional query.
  Response handle(const std::string& method, const std::string& target,
                  const std::string& body) const;

  // Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Serves until stop(); call after bind().
  void run();
  void stop();

 private:
  struct Impl;
  std::shared_ptr<SessionStore> store_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace patternforge

#endif  // PATTERNFORGE_SERVICE_HPP_
