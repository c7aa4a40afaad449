#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "taskalloc/domain.hpp"
#include "taskalloc/scenario_io.hpp"

namespace taskalloc {

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// In-memory sessions. Reads hand out an immutable scenario snapshot, so an
// evaluation never observes a half-replaced scenario.
class SessionStore {
 public:
  struct Session {
    std::shared_ptr<const Scenario> scenario;
    std::map<std::string, Assignment> alternatives;
  };

  SessionStore();

  std::string create(Scenario scenario);
  std::optional<Session> get(const std::string& id) const;
  // Last writer wins. Stored alternatives that no longer fit are dropped.
  bool replace_scenario(const std::string& id, Scenario scenario);
  // Throws AssignmentError when the assignment does not fit the scenario.
  bool save_alternative(const std::string& id, const std::string& label, const Assignment& assignment);
  std::vector<std::string> ids() const;

 private:
  static std::map<std::string, Assignment> initial_alternatives(const Scenario& scenario);

  mutable std::mutex mutex_;
  std::map<std::string, Session> sessions_;
  std::mt19937_64 ids_;
};

// Transport-independent request handling for the HTTP facade. Payloads use
// the scenario file's JSON tree format throughout.
class Service {
 public:
  Service();
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  HttpResponse handle(const HttpRequest& request);

  SessionStore& sessions() { return sessions_; }

  // Writes every session (scenario plus stored alternatives) to one file.
  void snapshot(const std::filesystem::path& path) const;

 private:
  struct Job {
    std::string kind;
    std::string state;  // running | done | failed
    int status = 0;
    Json payload;
  };

  HttpResponse create_session(const HttpRequest& request);
  HttpResponse get_session(const std::string& id);
  HttpResponse put_scenario(const std::string& id, const HttpRequest& request);
  HttpResponse evaluate(const std::string& id, const Json& body);
  HttpResponse compare(const std::string& id, const Json& body);
  HttpResponse optimize(const std::string& id, const Json& body);
  HttpResponse risk(const std::string& id, const Json& body);
  HttpResponse get_job(const std::string& id);
  HttpResponse start_job(const std::string& kind, std::function<HttpResponse()> work);

  SessionStore sessions_;
  std::mutex jobs_mutex_;
  std::map<std::string, Job> jobs_;
  std::uint64_t next_job_ = 1;
  std::vector<std::jthread> workers_;
};

// Blocking HTTP server on top of Service. CORS headers allow `cors_origin`.
// Returns false if the port cannot be bound.
bool serve(Service& service, const std::string& host, int port, const std::string& cors_origin = "*");

// Makes a running serve() return. Safe to call from a signal handler thread.
void stop_serving();

}  // namespace taskalloc
