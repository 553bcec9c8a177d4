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

#include "ccontour/http_api.hpp"

#include <httplib.h>
#include <sys/socket.h>

#include <chrono>
#include <functional>
#include <thread>

#include "ccontour/error.hpp"

namespace ccontour {

using nlohmann::json;

namespace {

void send_error(httplib::Response& res, int status, const char* code, const std::string& detail) {
  res.status = status;
  res.set_content(json{{"error", code}, {"detail", detail}}.dump(), "application/json");
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs a handler and maps library errors to status codes.
void guarded(httplib::Response& res, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const json::exception& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const NotFound& e) {
    send_error(res, 404, "not_found", e.what());
  } catch (const Conflict& e) {
    send_error(res, 409, "conflict", e.what());
  } catch (const Unprocessable& e) {
    send_error(res, 422, "unprocessable", e.what());
  } catch (const InvalidArgument& e) {
    send_error(res, 400, "invalid_argument", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

json parse_body(const httplib::Request& req) { return json::parse(req.body); }

json task_json(const TaskAssignment& t) {
  return {{"done", false},
          {"task_id", t.task_id},
          {"session_id", t.session_id},
          {"image_id", t.image_id},
          {"method", to_string(t.method)},
          {"position", t.position}};
}

}  // namespace

HttpApi::HttpApi(StudyService& service, std::string static_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  // The library default adds SO_REUSEPORT, which lets a second server share
  // an occupied port.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  routes();
  if (!static_dir.empty()) server_->set_mount_point("/", static_dir);
}

HttpApi::~HttpApi() = default;

void HttpApi::routes() {
  auto& s = *server_;

  s.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      const int per_method = body.value("images_per_method", 40);
      const Session session = service_.create_session(
          body.at("annotator_id").get<std::string>(), body.at("dataset_id").get<std::string>(),
          per_method);
      send_json(res, 201, session.to_json());
    });
  });

  s.Get(R"(/api/sessions/([^/]+)/tasks/next)",
        [this](const httplib::Request& req, httplib::Response& res) {
          guarded(res, [&] {
            const auto task = service_.next_task(req.matches[1]);
            send_json(res, 200, task ? task_json(*task) : json{{"done", true}});
          });
        });

  s.Get(R"(/api/images/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      res.status = 200;
      res.set_content(service_.image_png(req.matches[1]), "image/png");
    });
  });

  s.Post("/api/annotations", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::uint64_t id = service_.submit_annotation(parse_body(req));
      send_json(res, 201, {{"record_id", id}});
    });
  });

  s.Post("/api/surveys", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::uint64_t id = service_.submit_survey(parse_body(req));
      send_json(res, 201, {{"record_id", id}});
    });
  });

  s.Get(R"(/api/reports/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      res.status = 200;
      res.set_content(service_.metrics_report(req.matches[1]), "application/x-ndjson");
    });
  });

  s.Get("/api/export", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      res.status = 200;
      res.set_content(service_.export_records(), "application/x-ndjson");
    });
  });
}

bool HttpApi::bind(const std::string& host, int port) {
  return server_->bind_to_port(host, port);
}

int HttpApi::bind_any(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpApi::listen_after_bind() {
  listening_ = true;
  bool ok = true;
  if (!stop_requested_) ok = server_->listen_after_bind();
  finished_ = true;
  return ok;
}

// The server ignores stop() until its accept loop is running, so a stop that
// races with startup waits for the loop (or for listen to bail out).
void HttpApi::stop() {
  stop_requested_ = true;
  if (!listening_) return;
  while (!server_->is_running() && !finished_) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  server_->stop();
}

}  // namespace ccontour
