// Copyright 2026 The ccontour Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <memory>
#include <string>

#include "ccontour/service.hpp"

namespace httplib {
class Server;
}

namespace ccontour {

// Wires StudyService onto the /api routes. Errors are JSON bodies of the form
// {"error": code, "detail": message}:
//   400 invalid_argument / bad_request, 404 not_found, 409 conflict,
//   422 unprocessable, 500 internal.
class HttpApi {
 public:
  explicit HttpApi(StudyService& service, std::string static_dir = {});
  ~HttpApi();

  HttpApi(const HttpApi&) = delete;
  HttpApi& operator=(const HttpApi&) = delete;

  bool bind(const std::string& host, int port);
  // Binds an ephemeral port; returns it, or -1.
  int bind_any(const std::string& host);
  // Blocks until stop(). A stop() that arrives first makes this return
  // immediately.
  bool listen_after_bind();
  void stop();

  httplib::Server& server() { return *server_; }

 private:
  void routes();

  StudyService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::atomic<bool> listening_{false};
  std::atomic<bool> finished_{false};
  std::atomic<bool> stop_requested_{false};
};

}  // namespace ccontour
