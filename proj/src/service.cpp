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


#include "patternforge/service.hpp"

#include <httplib.h>

#include <json.hpp>
#include <regex>

#include "patternforge/errors.hpp"
#include "patternforge/printer.hpp"

namespace patternforge {

using nlohmann::json;

namespace {

HttpService::Response reply(int status, const json& body) { return {status, body.dump()}; }

HttpService::Response error(int status, const std::string& kind, const std::string& message) {
  return reply(status, json{{"error", kind}, {"message", message}});
}

std::map<std::string, std::string> parse_query(const std::string& query) {
  std::map<std::string, std::string> out;
  size_t pos = 0;
  while (pos <= query.size()) {
    size_t amp = query.find('&', pos);
    if (amp == std::string::npos) amp = query.size();
    std::string part = query.substr(pos, amp - pos);
    size_t eq = part.find('=');
    if (!part.empty()) {
      out[httplib::detail::decode_url(part.substr(0, eq), true)] =
          eq == std::string::npos ? "" : httplib::detail::decode_url(part.substr(eq + 1), true);
    }
    pos = amp + 1;
  }
  return out;
}

std::vector<Param> context_from_json(const json& j) {
  std::vector<Param> out;
  if (j.is_null()) return out;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) out.push_back({it.key(), it.value().get<std::string>()});
    return out;
  }
  if (!j.is_array()) throw PreconditionError("context must be an array or an object");
  for (const auto& p : j) {
    out.push_back({p.at("name").get<std::string>(), p.at("type").get<std::string>()});
  }
  return out;
}

json pattern_summary(const ScsPattern& p) {
  json calls = json::array();
  for (const auto& c : p.calls) calls.push_back(c.method_ref);
  return {{"id", p.id},
          {"description", p.description},
          {"support", p.support},
          {"tokens", p.tokens},
          {"calls", calls},
          {"hole_count", p.holes.size()},
          {"skeleton", print(p)}};
}

}  // namespace

struct HttpService::Impl {
  httplib::Server server;
};

HttpService::HttpService(std::shared_ptr<SessionStore> store)
    : store_(std::move(store)), impl_(std::make_unique<Impl>()) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    if (!req.params.empty()) {
      std::string q;
      for (const auto& [k, v] : req.params) {
        if (!q.empty()) q += '&';
        q += httplib::detail::encode_query_param(k) + "=" + httplib::detail::encode_query_param(v);
      }
      target += "?" + q;
    }
    Response r = handle(req.method, target, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl_->server.Get(".*", route);
  impl_->server.Post(".*", route);
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpService::run() { impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

HttpService::Response HttpService::handle(const std::string& method, const std::string& target,
                                          const std::string& body) const {
  static const std::regex kSession("/sessions/([A-Za-z0-9_.-]+)");
  static const std::regex kSessionAction("/sessions/([A-Za-z0-9_.-]+)/(fill|undo|code|events)");
  static const std::regex kExample("/examples/([^/]+)");

  const size_t qpos = target.find('?');
  const std::string path = target.substr(0, qpos);
  const auto query = qpos == std::string::npos ? std::map<std::string, std::string>{}
                                                : parse_query(target.substr(qpos + 1));
  const Engine& engine = store_->engine();
  std::smatch m;
  try {
    auto body_json = [&]() -> json {
      if (body.empty()) return json::object();
      json j = json::parse(body);
      if (!j.is_object()) throw PreconditionError("request body must be a JSON object");
      return j;
    };
    auto top = [&]() -> int {
      auto it = query.find("top");
      if (it == query.end()) return 10;
      size_t used = 0;
      int n = std::stoi(it->second, &used);
      if (used != it->second.size() || n < 0) throw PreconditionError("top must be a non-negative integer");
      return n;
    };

    if (method == "GET" && path == "/patterns") {
      json a = json::array();
      for (const auto& p : engine.patterns()) a.push_back(pattern_summary(p));
      return reply(200, json{{"patterns", a}});
    }
    if (method == "GET" && std::regex_match(path, m, kExample)) {
      const ScsExample* ex = engine.example(m[1]);
      if (!ex) return error(404, "UnknownExample", "unknown example '" + m[1].str() + "'");
      json ctx = json::array();
      for (const auto& p : ex->context_params) ctx.push_back({{"name", p.name}, {"type", p.type}});
      json fv = json::array();
      for (const auto& p : ex->free_vars) fv.push_back({{"name", p.name}, {"type", p.type}});
      return reply(200, json{{"id", ex->id},
                             {"context", ctx},
                             {"free_vars", fv},
                             {"source_uri", ex->source_uri ? json(*ex->source_uri) : json(nullptr)},
                             {"code", print(*ex)}});
    }
    if (method == "GET" && path == "/sessions") {
      return reply(200, json{{"sessions", store_->ids()}});
    }
    if (method == "POST" && path == "/sessions") {
      json j = body_json();
      if (!j.contains("pattern_id")) throw PreconditionError("pattern_id is required");
      std::string id = store_->open(j.at("pattern_id").get<std::string>(),
                                    context_from_json(j.value("context", json())),
                                    j.value("seed", uint64_t{0}));
      int n = top();
      return {201, store_->with_session(id, [&](Session& s) { return s.state_json(n); })};
    }
    if (std::regex_match(path, m, kSessionAction)) {
      const std::string id = m[1];
      const std::string action = m[2];
      if (method == "GET" && action == "code") {
        return reply(200, store_->with_session(id, [](Session& s) {
          EmitResult r = s.emit();
          return json{{"code", r.code}, {"complete", r.complete}};
        }));
      }
      if (method == "GET" && action == "events") {
        return reply(200, store_->with_session(id, [](Session& s) {
          json a = json::array();
          for (const auto& e : s.events()) a.push_back(json::parse(e));
          return json{{"events", a}};
        }));
      }
      if (method == "POST" && action == "fill") {
        json j = body_json();
        if (!j.contains("group_id")) throw PreconditionError("group_id is required");
        const std::string group = j.at("group_id").get<std::string>();
        int n = top();
        return {200, store_->with_session(id, [&](Session& s) {
                  if (j.contains("choice")) {
                    s.fill(group, j.at("choice").get<std::string>());
                  } else if (j.contains("expression")) {
                    s.fill_expression(group, j.at("expression").get<std::string>());
                  } else {
                    throw PreconditionError("choice or expression is required");
                  }
                  return s.state_json(n);
                })};
      }
      if (method == "POST" && action == "undo") {
        int n = top();
        return {200, store_->with_session(id, [&](Session& s) {
                  s.undo();
                  return s.state_json(n);
                })};
      }
      return error(405, "MethodNotAllowed", method + " " + path);
    }
    if (method == "GET" && std::regex_match(path, m, kSession)) {
      int n = top();
      return {200, store_->with_session(m[1], [&](Session& s) { return s.state_json(n); })};
    }
    return error(404, "NotFound", "no route for " + method + " " + path);
  } catch (const UnknownSession& e) {
    return error(404, "UnknownSession", e.what());
  } catch (const UnknownPattern& e) {
    return error(404, "UnknownPattern", e.what());
  } catch (const UnknownGroup& e) {
    return error(404, "UnknownGroup", e.what());
  } catch (const TypeMismatch& e) {
    return error(400, "TypeMismatch", e.what());
  } catch (const UnknownType& e) {
    return error(400, "UnknownType", e.what());
  } catch (const ModelMismatch& e) {
    return error(409, "ModelMismatch", e.what());
  } catch (const PreconditionError& e) {
    return error(400, "PreconditionError", e.what());
  } catch (const json::exception& e) {
    return error(400, "BadRequest", e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, "BadRequest", e.what());
  } catch (const std::out_of_range& e) {
    return error(400, "BadRequest", e.what());
  } catch (const Error& e) {
    return error(500, "Error", e.what());
  }
}

}  // namespace patternforge
