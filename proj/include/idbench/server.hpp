#pragma once

#include <memory>
#include <string>

#include "idbench/survey.hpp"

namespace idbench::survey {

// JSON-over-HTTP front end for a SurveyStore.
//   POST /sessions                      {"participant": "..."} -> 201 session
//   GET  /sessions/{id}                 -> session with answered flags
//   POST /sessions/{id}/direct/{idx}    {"relatedness": 1-5, "similarity": 1-5}
//   POST /sessions/{id}/indirect/{idx}  {"chosen": "id1" | "id2"}
//   GET  /export?format=csv&kind=direct|indirect[&include_partial=1]
//   GET  /export?format=json            both CSV bodies in one object
// Errors: 400 invalid input, 404 unknown session or question, 409 repeat.
class Server {
 public:
  explicit Server(SurveyStore& store);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Blocks until stop(). Returns false when the socket cannot be bound.
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it (negative on failure).
  int bind_any(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace idbench::survey
