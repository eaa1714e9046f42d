#include "idbench/server.hpp"

#include <charconv>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "idbench/errors.hpp"

namespace idbench::survey {

using nlohmann::json;

struct Server::Impl {
  SurveyStore& store;
  httplib::Server http;

  explicit Impl(SurveyStore& s) : store(s) { routes(); }

  static void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(-1, ' ', false, json::error_handler_t::replace), "application/json");
  }

  static void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, {{"error", message}});
  }

  static std::size_t index_of(const std::string& text) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size()) throw NotFoundError("bad question index");
    return v;
  }

  static json body_of(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    json j = json::parse(req.body);
    if (!j.is_object()) throw ValidationError("request body must be a JSON object");
    return j;
  }

  template <class F>
  static httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const json::exception& e) {
        send_error(res, 400, std::string("invalid JSON: ") + e.what());
      } catch (const ValidationError& e) {
        send_error(res, 400, e.what());
      } catch (const ParseError& e) {
        send_error(res, 400, e.what());
      } catch (const NotFoundError& e) {
        send_error(res, 404, e.what());
      } catch (const ConflictError& e) {
        send_error(res, 409, e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      }
    };
  }

  static int rating(const json& body, const char* key) {
    if (!body.contains(key) || !body.at(key).is_number_integer())
      throw ValidationError(std::string("'") + key + "' must be an integer between 1 and 5");
    return body.at(key).get<int>();
  }

  void routes() {
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}});
    });

    http.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_of(req);
      std::string participant;
      if (body.contains("participant")) {
        if (!body.at("participant").is_string()) throw ValidationError("'participant' must be a string");
        participant = body.at("participant").get<std::string>();
      }
      const Session s = store.create(std::move(participant));
      send_json(res, 201, json::parse(session_json(s)));
    }));

    http.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, json::parse(session_json(store.get(req.matches[1]))));
    }));

    http.Post(R"(/sessions/([^/]+)/direct/([^/]+))",
              guarded([this](const httplib::Request& req, httplib::Response& res) {
                const json body = body_of(req);
                const bool done = store.submit_direct(req.matches[1], index_of(req.matches[2]),
                                                      rating(body, "relatedness"), rating(body, "similarity"));
                send_json(res, 200, {{"ok", true}, {"state", done ? "complete" : "in_progress"}});
              }));

    http.Post(R"(/sessions/([^/]+)/indirect/([^/]+))",
              guarded([this](const httplib::Request& req, httplib::Response& res) {
                const json body = body_of(req);
                if (!body.contains("chosen") || !body.at("chosen").is_string())
                  throw ValidationError("'chosen' must be \"id1\" or \"id2\"");
                const bool done = store.submit_indirect(req.matches[1], index_of(req.matches[2]),
                                                        body.at("chosen").get<std::string>());
                send_json(res, 200, {{"ok", true}, {"state", done ? "complete" : "in_progress"}});
              }));

    http.Get("/export", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
      const std::string partial = req.get_param_value("include_partial");
      const Export ex = store.export_ratings(partial == "1" || partial == "true");
      std::ostringstream direct, indirect;
      write_direct_ratings(direct, ex.direct);
      write_indirect_ratings(indirect, ex.indirect);
      if (format == "json") {
        send_json(res, 200, {{"direct", direct.str()}, {"indirect", indirect.str()}});
      } else if (format == "csv") {
        const std::string kind = req.get_param_value("kind");
        if (kind == "direct") res.set_content(direct.str(), "text/csv");
        else if (kind == "indirect") res.set_content(indirect.str(), "text/csv");
        else throw ValidationError("kind must be direct or indirect");
        res.status = 200;
      } else {
        throw ValidationError("format must be csv or json");
      }
    }));
  }
};

Server::Server(SurveyStore& store) : impl_(std::make_unique<Impl>(store)) {}
Server::~Server() = default;

bool Server::listen(const std::string& host, int port) { return impl_->http.listen(host, port); }
int Server::bind_any(const std::string& host) { return impl_->http.bind_to_any_port(host); }
bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }
void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }
void Server::stop() { impl_->http.stop(); }

}  // namespace idbench::survey
