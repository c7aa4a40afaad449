#include <doctest.h>
#include <httplib.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "taskalloc/evaluator.hpp"
#include "taskalloc/optimizer.hpp"
#include "taskalloc/risk.hpp"
#include "taskalloc/service.hpp"

using namespace taskalloc;

namespace {

HttpResponse call(Service& svc, const std::string& method, const std::string& path, const Json& body) {
  return svc.handle({method, path, body.is_null() ? std::string() : body.dump()});
}

std::string demo_session(Service& svc) {
  const auto r = svc.handle({"POST", "/sessions", serialize_scenario(demo_scenario())});
  REQUIRE(r.status == 201);
  return Json::parse(r.body).at("id");
}

Json europe_payload() {
  return {{"assignment", to_json(demo_scenario().find_alternative(demo::all_europe)->assignment)}};
}

}  // namespace

TEST_CASE("sessions: create, read, uniqueness") {
  Service svc;
  const auto a = demo_session(svc);
  const auto b = demo_session(svc);
  CHECK(a != b);
  const auto got = svc.handle({"GET", "/sessions/" + a, ""});
  CHECK(got.status == 200);
  CHECK(parse_scenario(got.body) == demo_scenario());
  CHECK(svc.handle({"GET", "/sessions/nope", ""}).status == 404);

  const auto shortcut = svc.handle({"POST", "/sessions", "demo"});
  CHECK(shortcut.status == 201);
}

TEST_CASE("malformed documents are rejected with violations") {
  Service svc;
  const auto broken = svc.handle({"POST", "/sessions", "{\"schema_version\": 1, \"sites\": ["});
  CHECK(broken.status == 422);
  CHECK(!Json::parse(broken.body).at("violations").empty());

  auto doc = scenario_to_json(demo_scenario());
  doc["coupling"][0]["weight"] = 1.5;
  const auto invalid = svc.handle({"POST", "/sessions", doc.dump()});
  CHECK(invalid.status == 422);
  CHECK(Json::parse(invalid.body).at("violations")[0].at("code") == "coupling_out_of_range");
}

TEST_CASE("evaluate endpoint mirrors the library") {
  Service svc;
  const auto id = demo_session(svc);
  const auto s = demo_scenario();
  const auto r1 = call(svc, "POST", "/sessions/" + id + "/evaluate", europe_payload());
  const auto r2 = call(svc, "POST", "/sessions/" + id + "/evaluate", europe_payload());
  CHECK(r1.status == 200);
  CHECK(r1.body == r2.body);
  CHECK(Json::parse(r1.body) == to_json(evaluate(s, s.find_alternative(demo::all_europe)->assignment)));
  CHECK(Json::parse(r1.body).at("per_task")[3].at("factor_breakdown").is_object());

  const auto by_label = call(svc, "POST", "/sessions/" + id + "/evaluate", {{"label", demo::all_europe}});
  CHECK(by_label.body == r1.body);

  auto partial = europe_payload();
  partial["assignment"].erase("comp3");
  const auto missing = call(svc, "POST", "/sessions/" + id + "/evaluate", partial);
  CHECK(missing.status == 422);
  CHECK(Json::parse(missing.body).at("error") == "unassigned_task");
  CHECK(Json::parse(missing.body).at("task") == "comp3");

  CHECK(call(svc, "POST", "/sessions/zzz/evaluate", europe_payload()).status == 404);
  CHECK(call(svc, "POST", "/sessions/" + id + "/evaluate", {{"label", "nope"}}).status == 404);
  CHECK(svc.handle({"POST", "/sessions/" + id + "/evaluate", "{oops"}).status == 400);

  auto sampled = europe_payload();
  sampled["mode"] = "sampled";
  sampled["seed"] = 4;
  CHECK(Json::parse(call(svc, "POST", "/sessions/" + id + "/evaluate", sampled).body) ==
        to_json(evaluate(s, s.find_alternative(demo::all_europe)->assignment, EvaluationMode::sampled(4))));
}

TEST_CASE("compare endpoint and saved alternatives") {
  Service svc;
  const auto id = demo_session(svc);
  const auto r = call(svc, "POST", "/sessions/" + id + "/compare", Json::object());
  CHECK(r.status == 200);
  CHECK(Json::parse(r.body).at("winner") == std::string(demo::mixed));

  const Json effort{{"goal", {{"criteria", {{{"criterion", "total_effort"}, {"weight", 1.0}}}}}}};
  CHECK(Json::parse(call(svc, "POST", "/sessions/" + id + "/compare", effort).body).at("winner") ==
        std::string(demo::all_europe));

  auto save = europe_payload();
  save["assignment"]["comp5"] = "bangalore";
  save["save_as"] = "Comp 5 offshore";
  CHECK(call(svc, "POST", "/sessions/" + id + "/evaluate", save).status == 200);
  const auto four = Json::parse(call(svc, "POST", "/sessions/" + id + "/compare", Json::object()).body);
  CHECK(four.at("alternatives").size() == 4);

  const auto subset =
      call(svc, "POST", "/sessions/" + id + "/compare", {{"labels", {"Comp 5 offshore", demo::all_india}}});
  CHECK(Json::parse(subset.body).at("ranking").size() == 2);
  CHECK(call(svc, "POST", "/sessions/" + id + "/compare", {{"labels", {"ghost"}}}).status == 404);
}

TEST_CASE("sessions are isolated") {
  Service svc;
  const auto a = demo_session(svc);
  const auto b = demo_session(svc);
  auto cheap = scenario_to_json(demo_scenario());
  cheap["sites"][3]["cost_rate"] = 1.0;
  CHECK(svc.handle({"PUT", "/sessions/" + a + "/scenario", cheap.dump()}).status == 200);
  const auto ea = Json::parse(call(svc, "POST", "/sessions/" + a + "/evaluate", {{"label", demo::all_india}}).body);
  const auto eb = Json::parse(call(svc, "POST", "/sessions/" + b + "/evaluate", {{"label", demo::all_india}}).body);
  CHECK(ea.at("total_cost") < eb.at("total_cost"));
  CHECK(svc.handle({"PUT", "/sessions/" + a + "/scenario", "[]"}).status == 422);
  CHECK(svc.handle({"PUT", "/sessions/none/scenario", cheap.dump()}).status == 404);
}

TEST_CASE("optimize and risk endpoints") {
  Service svc;
  const auto id = demo_session(svc);
  const auto s = demo_scenario();
  const auto exact = Json::parse(call(svc, "POST", "/sessions/" + id + "/optimize", {{"exhaustive", true}}).body);
  CHECK(exact.at("best_score") == to_json(brute_force(s, s.goal)).at("best_score"));

  const auto climb = Json::parse(call(svc, "POST", "/sessions/" + id + "/optimize", {{"restarts", 5}}).body);
  SearchConfig config;
  config.restarts = 5;
  CHECK(climb == to_json(hill_climb(s, config)));

  const auto refused = call(svc, "POST", "/sessions/" + id + "/optimize", {{"exhaustive", true}, {"cap", 10}});
  CHECK(refused.status == 422);
  CHECK(Json::parse(refused.body).at("error") == "enumeration_cap");

  const Json risk{{"label", demo::mixed}, {"n", 2000}, {"seed", 6}, {"budget", 1100.0}};
  const auto r1 = call(svc, "POST", "/sessions/" + id + "/risk", risk);
  const auto r2 = call(svc, "POST", "/sessions/" + id + "/risk", risk);
  CHECK(r1.status == 200);
  CHECK(r1.body == r2.body);
  CHECK(call(svc, "POST", "/sessions/" + id + "/risk", {{"label", "ghost"}}).status == 404);
}

TEST_CASE("async jobs report their state") {
  Service svc;
  const auto id = demo_session(svc);
  const auto started = call(svc, "POST", "/sessions/" + id + "/optimize", {{"exhaustive", true}, {"async", true}});
  CHECK(started.status == 202);
  const std::string job = Json::parse(started.body).at("job_id");
  Json state;
  for (int i = 0; i < 500; ++i) {
    state = Json::parse(svc.handle({"GET", "/jobs/" + job, ""}).body);
    if (state.at("state") != "running") break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  CHECK(state.at("state") == "done");
  CHECK(state.at("result").at("exhaustive") == true);

  const auto failing = call(svc, "POST", "/sessions/" + id + "/optimize",
                            {{"exhaustive", true}, {"cap", 1}, {"async", true}});
  const std::string job2 = Json::parse(failing.body).at("job_id");
  for (int i = 0; i < 500; ++i) {
    state = Json::parse(svc.handle({"GET", "/jobs/" + job2, ""}).body);
    if (state.at("state") != "running") break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  CHECK(state.at("state") == "failed");
  CHECK(svc.handle({"GET", "/jobs/job-999", ""}).status == 404);
}

TEST_CASE("factors and routing") {
  Service svc;
  const auto f = svc.handle({"GET", "/factors", ""});
  CHECK(f.status == 200);
  CHECK(Json::parse(f.body).size() == 11);
  CHECK(svc.handle({"DELETE", "/sessions", ""}).status == 404);
  CHECK(svc.handle({"GET", "/elsewhere", ""}).status == 404);
  CHECK(svc.handle({"OPTIONS", "/sessions", ""}).status == 204);
}

TEST_CASE("snapshot writes every session") {
  Service svc;
  const auto id = demo_session(svc);
  const auto path = std::filesystem::temp_directory_path() / "taskalloc_snapshot_test.json";
  svc.snapshot(path);
  std::ifstream in(path);
  const auto all = Json::parse(in);
  CHECK(scenario_from_json(all.at(id)) == demo_scenario());
  std::filesystem::remove(path);
}

TEST_CASE("HTTP round trip over a socket") {
  Service svc;
  int port = 0;
  std::thread server;
  {
    // Ask the kernel for a free port, then hand it to the server.
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    REQUIRE(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    socklen_t len = sizeof addr;
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    port = ntohs(addr.sin_port);
    ::close(fd);
  }
  server = std::thread([&] { serve(svc, "127.0.0.1", port, "http://localhost:5173"); });
  struct Stop {
    std::thread& t;
    ~Stop() {
      stop_serving();
      t.join();
    }
  } stop{server};
  httplib::Client client("127.0.0.1", port);
  httplib::Result factors;
  for (int i = 0; i < 200 && !factors; ++i) {
    factors = client.Get("/factors");
    if (!factors) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  REQUIRE(factors);
  CHECK(factors->status == 200);
  CHECK(factors->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");

  const auto created = client.Post("/sessions", "demo", "text/plain");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = Json::parse(created->body).at("id");
  const auto evaluated = client.Post("/sessions/" + id + "/evaluate", europe_payload().dump(), "application/json");
  REQUIRE(evaluated);
  CHECK(Json::parse(evaluated->body) ==
        to_json(evaluate(demo_scenario(), demo_scenario().find_alternative(demo::all_europe)->assignment)));
}
