#include <atomic>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include "doctest.h"
#include "json.hpp"
#include "succinct/service.hpp"
#include "support.hpp"

using namespace succinct;
using namespace succinct::service;
using nlohmann::json;

namespace {

const std::string kAgG = "inputs i;\noutputs g;\nAG g\n";

struct Call {
  std::string method, path, body;
};

json call(Service& s, const std::string& method, const std::string& path, const std::string& body = "") {
  auto r = s.handle(method, path, body);
  json j = json::parse(r.body);
  j["_status"] = r.status;
  return j;
}

std::string create_body(const std::string& spec) { return json{{"spec", spec}}.dump(); }

}  // namespace

TEST_CASE("scripted dialogue matches the golden transcript") {
  Service s;
  const std::vector<Call> script{
      {"POST", "/sessions", create_body(kAgG)},
      {"POST", "/sessions/s0001/step", R"({"input":[]})"},
      {"POST", "/sessions/s0001/step", R"({"input":["i"]})"},
      {"POST", "/sessions/s0001/whatif", R"({"assignment":{"g":false}})"},
      {"POST", "/sessions/s0001/step", R"({"input":[]})"},
      {"POST", "/sessions/s0001/undo", ""},
      {"GET", "/sessions/s0001", ""},
      {"DELETE", "/sessions/s0001", ""},
      {"POST", "/sessions/s0001/step", R"({"input":[]})"},
  };
  std::string transcript;
  for (const auto& c : script) {
    const auto r = s.handle(c.method, c.path, c.body);
    transcript += "> " + c.method + " " + c.path + (c.body.empty() ? "" : " " + c.body) + "\n";
    transcript += "< " + std::to_string(r.status) + " " + r.body + "\n";
  }
  const auto path = testing::fixture("service/golden.txt");
  if (std::getenv("SUCCINCT_UPDATE_GOLDEN")) std::ofstream(path) << transcript;
  CHECK(transcript == testing::read_file(path));
}

TEST_CASE("create reports the realizability verdict") {
  Service s;
  auto r = call(s, "POST", "/sessions", create_body(kAgG));
  CHECK(r["_status"] == 201);
  CHECK(r["id"] == "s0001");
  CHECK(r["outputs"] == json::array({"g"}));
  CHECK(r["realizable"] == true);
  CHECK(r["k"] == 0);
  CHECK(r["initial_output"] == json::array({"g"}));

  auto step = call(s, "POST", "/sessions/s0001/step", R"({"input":[]})");
  CHECK(step["output"] == json::array({"g"}));
  CHECK(step["depth"] == 1);

  auto bad = call(s, "POST", "/sessions", create_body("inputs i;\noutputs g;\ng & !g\n"));
  CHECK(bad["_status"] == 422);
  CHECK(bad["error"]["code"] == "unrealizable");
  CHECK(bad["realizable"] == false);
  CHECK(s.session_count() == 1);
}

TEST_CASE("error codes") {
  Service s;
  call(s, "POST", "/sessions", create_body(kAgG));
  auto code = [&](const std::string& m, const std::string& p, const std::string& b = "") {
    return call(s, m, p, b)["error"]["code"].get<std::string>();
  };
  CHECK(code("POST", "/sessions", "not json") == "bad_request");
  CHECK(code("POST", "/sessions", "{}") == "bad_request");
  CHECK(code("POST", "/sessions", create_body("inputs i;\noutputs g;\nAG (g\n")) == "parse_error");
  CHECK(code("POST", "/sessions", create_body("inputs i;\noutputs i;\nAG i\n")) == "invalid_spec");
  CHECK(code("POST", "/sessions/s0001/step", R"({"input":["z"]})") == "invalid_letter");
  CHECK(code("POST", "/sessions/s0001/step", R"({"input":["g"]})") == "invalid_letter");
  CHECK(code("POST", "/sessions/s0001/undo") == "nothing_to_undo");
  CHECK(code("POST", "/sessions/s0009/step", "{}") == "unknown_session");
  CHECK(code("GET", "/sessions/s0001/step") == "method_not_allowed");
  CHECK(code("GET", "/elsewhere") == "not_found");
  CHECK(code("POST", "/sessions/s0001/jump", "{}") == "not_found");
  auto p = call(s, "POST", "/sessions", create_body("inputs i;\noutputs g;\nAG (g\n"));
  CHECK(p["_status"] == 400);
  CHECK(p["error"]["line"] == 4);  // end of input after the trailing newline
  CHECK(call(s, "DELETE", "/sessions/s0001")["deleted"] == true);
  CHECK(code("GET", "/sessions/s0001") == "unknown_session");
}

TEST_CASE("what-if verdicts") {
  Service s;
  call(s, "POST", "/sessions", create_body(kAgG));
  auto verdict = [&](const std::string& body) {
    return call(s, "POST", "/sessions/s0001/whatif", body)["verdict"].get<std::string>();
  };
  CHECK(verdict(R"({"prefix":""})") == "winning");
  CHECK(verdict(R"({"prefix":"1"})") == "winning");
  CHECK(verdict(R"({"prefix":"0"})") == "losing");
  CHECK(verdict(R"({"assignment":{"g":true}})") == "winning");
  CHECK(verdict(R"({"assignment":{"g":false}})") == "losing");
  CHECK(verdict(R"({"prefix":"0101010101010101010101"})") == "invalid");
  CHECK(verdict(R"({"assignment":{"x":true}})") == "invalid");
}

TEST_CASE("idle sessions expire") {
  auto now = std::chrono::steady_clock::time_point{};
  Options o;
  o.ttl = std::chrono::seconds(60);
  o.now = [&] { return now; };
  Service s(o);
  call(s, "POST", "/sessions", create_body(kAgG));
  call(s, "POST", "/sessions", create_body(kAgG));
  now += std::chrono::seconds(45);
  CHECK(call(s, "GET", "/sessions/s0001")["_status"] == 200);
  now += std::chrono::seconds(45);
  CHECK(call(s, "GET", "/sessions/s0001")["_status"] == 200);
  CHECK(call(s, "GET", "/sessions/s0002")["error"]["code"] == "unknown_session");
  CHECK(s.session_count() == 1);
}

TEST_CASE("concurrent requests on one session") {
  Service s;
  const std::string spec = testing::read_file(testing::fixture("specs/s05.ctl"));
  REQUIRE(call(s, "POST", "/sessions", create_body(spec))["_status"] == 201);
  call(s, "POST", "/sessions", create_body(kAgG));
  const auto before = call(s, "GET", "/sessions/s0001")["digest"];

  // What-ifs alone never move the state.
  {
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t)
      pool.emplace_back([&, t] {
        for (int n = 0; n < 200; ++n) {
          const auto r = call(s, "POST", "/sessions/s0001/whatif", json{{"prefix", std::string(t % 3, '1')}}.dump());
          CHECK(r["digest"] == before);
        }
      });
    for (auto& th : pool) th.join();
  }
  CHECK(call(s, "GET", "/sessions/s0001")["digest"] == before);

  // Steps from many threads are linearized: every depth appears once.
  std::mutex mu;
  std::multiset<int> depths;
  std::atomic<int> other_ok{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < 6; ++t)
    pool.emplace_back([&] {
      for (int n = 0; n < 30; ++n) {
        const auto r = call(s, "POST", "/sessions/s0001/step", R"({"input":[]})");
        std::lock_guard lock(mu);
        depths.insert(r["depth"].get<int>());
      }
    });
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&] {
      for (int n = 0; n < 50; ++n) {
        call(s, "POST", "/sessions/s0001/whatif", R"({"prefix":"1"})");
        if (call(s, "POST", "/sessions/s0002/step", "{}")["output"] == json::array({"g"})) ++other_ok;
      }
    });
  for (auto& th : pool) th.join();
  CHECK(depths.size() == 180);
  CHECK(std::set<int>(depths.begin(), depths.end()).size() == 180);
  CHECK(*depths.rbegin() == 180);
  CHECK(other_ok == 200);
  CHECK(call(s, "GET", "/sessions/s0002")["depth"] == 200);
}
