#include "taskalloc/service.hpp"

#include <httplib.h>

#include <atomic>
#include <fstream>
#include <sstream>

#include "taskalloc/evaluator.hpp"
#include "taskalloc/optimizer.hpp"
#include "taskalloc/report.hpp"
#include "taskalloc/risk.hpp"

namespace taskalloc {

namespace {

HttpResponse json_response(int status, const Json& body) { return {status, body.dump(), "application/json"}; }

HttpResponse error_response(int status, const std::string& code, const std::string& message,
                            const std::vector<Issue>& violations = {}) {
  Json body{{"error", code}, {"message", message}};
  if (!violations.empty()) body["violations"] = to_json(violations);
  return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : path.substr(0, path.find('?'))) {
    if (c == '/') {
      if (!current.empty()) parts.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

Json parse_body(const std::string& body) {
  if (trim(body).empty()) return Json::object();
  return Json::parse(body);
}

// Maps engine exceptions onto HTTP statuses.
HttpResponse guarded(const std::function<HttpResponse()>& work) {
  try {
    return work();
  } catch (const ValidationError& e) {
    return error_response(422, "validation_failed", e.what(), e.issues());
  } catch (const AssignmentError& e) {
    Json body{{"error", e.code()}, {"task", e.task()}, {"message", e.what()}};
    return json_response(422, body);
  } catch (const RefusalError& e) {
    return error_response(422, e.code(), e.what());
  } catch (const ParseError& e) {
    return error_response(422, e.code(), e.what(), {{e.code(), "", e.what()}});
  } catch (const EvaluationError& e) {
    return error_response(422, e.code(), e.what());
  } catch (const Json::exception& e) {
    return error_response(400, "bad_request", e.what());
  } catch (const Error& e) {
    return error_response(422, e.code(), e.what());
  } catch (const std::invalid_argument& e) {
    return error_response(400, "bad_request", e.what());
  } catch (const std::domain_error& e) {
    return error_response(400, "bad_request", e.what());
  }
}

EvaluationMode mode_from(const Json& body) {
  const auto mode = body.value("mode", std::string("deterministic"));
  if (mode == "deterministic") return EvaluationMode::deterministic();
  if (mode == "sampled") return EvaluationMode::sampled(body.value("seed", std::uint64_t{0}));
  throw std::invalid_argument("mode must be 'deterministic' or 'sampled'");
}

// The session's scenario with its stored alternatives: file order first,
// then ones saved through the service.
Scenario with_session_alternatives(const SessionStore::Session& session) {
  Scenario copy = *session.scenario;
  std::vector<NamedAlternative> ordered;
  for (const auto& alt : copy.alternatives) {
    if (auto it = session.alternatives.find(alt.label); it != session.alternatives.end()) {
      ordered.push_back({alt.label, it->second});
    }
  }
  for (const auto& [label, assignment] : session.alternatives) {
    if (!copy.find_alternative(label)) ordered.push_back({label, assignment});
  }
  copy.alternatives = std::move(ordered);
  return copy;
}

}  // namespace

SessionStore::SessionStore() : ids_(std::random_device{}()) {}

std::map<std::string, Assignment> SessionStore::initial_alternatives(const Scenario& scenario) {
  std::map<std::string, Assignment> out;
  for (const auto& alt : scenario.alternatives) out[alt.label] = alt.assignment;
  return out;
}

std::string SessionStore::create(Scenario scenario) {
  auto alternatives = initial_alternatives(scenario);
  auto shared = std::make_shared<const Scenario>(std::move(scenario));
  std::lock_guard lock(mutex_);
  std::string id;
  do {
    std::ostringstream out;
    out << std::hex << ids_();
    id = out.str();
  } while (sessions_.contains(id));
  sessions_[id] = Session{std::move(shared), std::move(alternatives)};
  return id;
}

std::optional<SessionStore::Session> SessionStore::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second;
}

bool SessionStore::replace_scenario(const std::string& id, Scenario scenario) {
  auto fresh = initial_alternatives(scenario);
  auto shared = std::make_shared<const Scenario>(std::move(scenario));
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return false;
  for (const auto& [label, assignment] : it->second.alternatives) {
    if (fresh.contains(label)) continue;
    try {
      check_assignment(*shared, assignment);
      fresh[label] = assignment;
    } catch (const AssignmentError&) {
    }
  }
  it->second = Session{std::move(shared), std::move(fresh)};
  return true;
}

bool SessionStore::save_alternative(const std::string& id, const std::string& label, const Assignment& assignment) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return false;
  check_assignment(*it->second.scenario, assignment);
  it->second.alternatives[label] = assignment;
  return true;
}

std::vector<std::string> SessionStore::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, session] : sessions_) out.push_back(id);
  return out;
}

Service::Service() = default;

Service::~Service() {
  for (auto& w : workers_) {
    if (w.joinable()) w.join();
  }
}

void Service::snapshot(const std::filesystem::path& path) const {
  Json all = Json::object();
  const auto& store = sessions_;
  for (const auto& id : store.ids()) {
    auto session = store.get(id);
    if (!session) continue;
    all[id] = scenario_to_json(with_session_alternatives(*session));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshot to " + path.string());
  out << all.dump(2) << "\n";
}

HttpResponse Service::handle(const HttpRequest& request) {
  const auto parts = split_path(request.path);
  const auto& method = request.method;
  if (method == "OPTIONS") return {204, "", "text/plain"};

  if (parts.size() == 1 && parts[0] == "factors" && method == "GET") {
    return json_response(200, to_json(builtin_factor_catalog()));
  }
  if (parts.size() == 2 && parts[0] == "jobs" && method == "GET") return get_job(parts[1]);
  if (!parts.empty() && parts[0] == "sessions") {
    if (parts.size() == 1 && method == "POST") return create_session(request);
    if (parts.size() == 2 && method == "GET") return get_session(parts[1]);
    if (parts.size() == 3 && parts[2] == "scenario" && method == "PUT") return put_scenario(parts[1], request);
    if (parts.size() == 3 && method == "POST") {
      const auto& id = parts[1];
      const auto& action = parts[2];
      if (action != "evaluate" && action != "compare" && action != "optimize" && action != "risk") {
        return error_response(404, "not_found", "no route for " + request.path);
      }
      Json body;
      try {
        body = parse_body(request.body);
      } catch (const Json::parse_error& e) {
        return error_response(400, "syntax_error", e.what());
      }
      if (!body.is_object()) return error_response(400, "bad_request", "request body must be a JSON object");
      if (!sessions_.get(id)) return error_response(404, "unknown_session", "no session '" + id + "'");
      if (action == "evaluate") return evaluate(id, body);
      if (action == "compare") return compare(id, body);
      if (action == "optimize") return optimize(id, body);
      return risk(id, body);
    }
  }
  return error_response(404, "not_found", "no route for " + method + " " + request.path);
}

HttpResponse Service::create_session(const HttpRequest& request) {
  return guarded([&] {
    const auto body = trim(request.body);
    Scenario scenario = (body == "demo" || body == "\"demo\"") ? demo_scenario() : parse_scenario(body);
    const auto id = sessions_.create(std::move(scenario));
    return json_response(201, Json{{"id", id}});
  });
}

HttpResponse Service::get_session(const std::string& id) {
  auto session = sessions_.get(id);
  if (!session) return error_response(404, "unknown_session", "no session '" + id + "'");
  return json_response(200, scenario_to_json(with_session_alternatives(*session)));
}

HttpResponse Service::put_scenario(const std::string& id, const HttpRequest& request) {
  if (!sessions_.get(id)) return error_response(404, "unknown_session", "no session '" + id + "'");
  return guarded([&] {
    if (!sessions_.replace_scenario(id, parse_scenario(request.body))) {
      return error_response(404, "unknown_session", "no session '" + id + "'");
    }
    return json_response(200, Json{{"id", id}});
  });
}

namespace {

// Assignment from {"assignment": {...}} (pins filled in) or {"label": "..."}.
std::optional<Assignment> resolve_assignment(const SessionStore::Session& session, const Json& body,
                                             std::string& missing_label) {
  if (auto it = body.find("assignment"); it != body.end()) {
    return with_pins(*session.scenario, assignment_from_json(*it));
  }
  const auto label = body.value("label", std::string());
  auto it = session.alternatives.find(label);
  if (it == session.alternatives.end()) {
    missing_label = label;
    return std::nullopt;
  }
  return it->second;
}

HttpResponse unknown_label(const std::string& label) {
  return error_response(404, "unknown_label", "no stored alternative '" + label + "'");
}

}  // namespace

HttpResponse Service::evaluate(const std::string& id, const Json& body) {
  return guarded([&] {
    auto session = sessions_.get(id);
    if (!session) return error_response(404, "unknown_session", "no session '" + id + "'");
    std::string missing;
    auto assignment = resolve_assignment(*session, body, missing);
    if (!assignment) return unknown_label(missing);
    const auto result = taskalloc::evaluate(*session->scenario, *assignment, mode_from(body));
    if (auto save = body.find("save_as"); save != body.end()) {
      sessions_.save_alternative(id, save->get<std::string>(), *assignment);
    }
    return json_response(200, to_json(result));
  });
}

HttpResponse Service::compare(const std::string& id, const Json& body) {
  return guarded([&] {
    auto session = sessions_.get(id);
    if (!session) return error_response(404, "unknown_session", "no session '" + id + "'");
    std::vector<NamedAlternative> alternatives;
    if (auto labels = body.find("labels"); labels != body.end()) {
      for (const auto& label : *labels) {
        const auto name = label.get<std::string>();
        auto it = session->alternatives.find(name);
        if (it == session->alternatives.end()) return unknown_label(name);
        alternatives.push_back({name, it->second});
      }
    }
    if (auto inline_alts = body.find("alternatives"); inline_alts != body.end()) {
      for (const auto& alt : *inline_alts) {
        alternatives.push_back({alt.at("label").get<std::string>(),
                                with_pins(*session->scenario, assignment_from_json(alt.at("assignment")))});
      }
    }
    if (body.find("labels") == body.end() && body.find("alternatives") == body.end()) {
      alternatives = with_session_alternatives(*session).alternatives;
    }
    std::optional<GqmGoal> goal;
    if (auto g = body.find("goal"); g != body.end()) goal = goal_from_json(*g);
    const auto report = taskalloc::compare(*session->scenario, alternatives, goal);
    auto payload = to_json(report);
    payload["table"] = render_comparison(report);
    return json_response(200, payload);
  });
}

HttpResponse Service::optimize(const std::string& id, const Json& body) {
  auto work = [this, id, body]() {
    return guarded([&] {
      auto session = sessions_.get(id);
      if (!session) return error_response(404, "unknown_session", "no session '" + id + "'");
      GqmGoal goal = session->scenario->goal;
      if (auto g = body.find("goal"); g != body.end()) goal = goal_from_json(*g);
      SearchResult result;
      if (body.value("exhaustive", false)) {
        result = brute_force(*session->scenario, goal, body.value("cap", kDefaultEnumerationCap));
      } else {
        SearchConfig config;
        config.restarts = body.value("restarts", config.restarts);
        config.seed = body.value("seed", config.seed);
        config.max_no_improve = body.value("max_no_improve", config.max_no_improve);
        config.objective = goal;
        result = hill_climb(*session->scenario, config);
      }
      return json_response(200, to_json(result));
    });
  };
  if (body.value("async", false)) return start_job("optimize", work);
  return work();
}

HttpResponse Service::risk(const std::string& id, const Json& body) {
  auto work = [this, id, body]() {
    return guarded([&] {
      auto session = sessions_.get(id);
      if (!session) return error_response(404, "unknown_session", "no session '" + id + "'");
      std::string missing;
      auto assignment = resolve_assignment(*session, body, missing);
      if (!assignment) return unknown_label(missing);
      const auto n = body.value("n", std::size_t{10000});
      const auto seed = body.value("seed", std::uint64_t{0});
      std::vector<double> ps = body.value("percentiles", std::vector<double>{0.5, 0.8, 0.95});
      std::optional<double> budget;
      if (auto b = body.find("budget"); b != body.end() && !b->is_null()) budget = b->get<double>();
      const auto dist = monte_carlo(*session->scenario, *assignment, n, seed);
      return json_response(200, to_json(summarize(dist, ps, budget)));
    });
  };
  if (body.value("async", false)) return start_job("risk", work);
  return work();
}

HttpResponse Service::start_job(const std::string& kind, std::function<HttpResponse()> work) {
  std::string job_id;
  {
    std::lock_guard lock(jobs_mutex_);
    job_id = "job-" + std::to_string(next_job_++);
    jobs_[job_id] = Job{kind, "running", 0, Json()};
    workers_.emplace_back([this, job_id, work = std::move(work)] {
      HttpResponse response = work();
      Json payload;
      try {
        payload = Json::parse(response.body);
      } catch (const Json::exception&) {
        payload = response.body;
      }
      std::lock_guard inner(jobs_mutex_);
      auto& job = jobs_[job_id];
      job.state = response.status < 300 ? "done" : "failed";
      job.status = response.status;
      job.payload = std::move(payload);
    });
  }
  return json_response(202, Json{{"job_id", job_id}, {"state", "running"}});
}

HttpResponse Service::get_job(const std::string& id) {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return error_response(404, "unknown_job", "no job '" + id + "'");
  Json body{{"id", id}, {"kind", it->second.kind}, {"state", it->second.state}};
  if (it->second.state == "done") body["result"] = it->second.payload;
  if (it->second.state == "failed") {
    body["status"] = it->second.status;
    body["error"] = it->second.payload;
  }
  return json_response(200, body);
}

namespace {

std::atomic<httplib::Server*> g_server{nullptr};

}  // namespace

void stop_serving() {
  if (auto* server = g_server.load()) server->stop();
}

bool serve(Service& service, const std::string& host, int port, const std::string& cors_origin) {
  httplib::Server server;
  auto forward = [&service, cors_origin](const httplib::Request& req, httplib::Response& res) {
    const auto out = service.handle({req.method, req.path, req.body});
    res.status = out.status;
    res.set_header("Access-Control-Allow-Origin", cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    if (!out.body.empty()) res.set_content(out.body, out.content_type);
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Put(".*", forward);
  server.Options(".*", forward);
  if (!server.bind_to_port(host, port)) return false;
  g_server = &server;
  const bool ok = server.listen_after_bind();
  g_server = nullptr;
  return ok;
}

}  // namespace taskalloc
