#include "succinct/service.hpp"

#include <cstdio>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "succinct/error.hpp"

namespace succinct::service {

using nlohmann::json;

namespace {

struct Failure {
  int status;
  std::string code;
  std::string message;
};

Response reply(int status, const json& body) { return {status, body.dump()}; }

Response error(int status, const std::string& code, const std::string& message) {
  return reply(status, json{{"error", {{"code", code}, {"message", message}}}});
}

json names(Letter l, const std::vector<std::string>& props) {
  json out = json::array();
  for (std::size_t i = 0; i < props.size(); ++i)
    if ((l >> i) & 1U) out.push_back(props[i]);
  return out;
}

json parse_body(std::string_view body) {
  if (body.empty()) return json::object();
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Failure{400, "bad_request", "body must be a JSON object"};
  return j;
}

Letter letter_of(const json& j, const std::vector<std::string>& props) {
  if (!j.is_array()) throw Failure{400, "bad_request", "letters are arrays of proposition names"};
  Letter l = 0;
  for (const auto& x : j) {
    if (!x.is_string()) throw Failure{400, "bad_request", "letters are arrays of proposition names"};
    const auto i = index_of(props, x.get<std::string>());
    if (!i) throw Failure{400, "invalid_letter", "unknown proposition '" + x.get<std::string>() + "'"};
    l |= Letter{1} << *i;
  }
  return l;
}

const char* mode_name(synth::Mode m) { return m == synth::Mode::Enumerate ? "enumerate" : "binsearch"; }

// Splits "/sessions/{id}/{action}" into its parts; empty strings when absent.
bool split_path(std::string_view path, std::string& id, std::string& action) {
  constexpr std::string_view root = "/sessions";
  if (path.substr(0, root.size()) != root) return false;
  path.remove_prefix(root.size());
  if (path.empty()) return true;
  if (path.front() != '/') return false;
  path.remove_prefix(1);
  const auto slash = path.find('/');
  id = std::string(path.substr(0, slash));
  if (id.empty()) return false;
  if (slash != std::string_view::npos) {
    action = std::string(path.substr(slash + 1));
    if (action.empty() || action.find('/') != std::string::npos) return false;
  }
  return true;
}

}  // namespace

Service::Service(Options options) : options_(std::move(options)) {}

std::size_t Service::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

void Service::expire_locked(std::chrono::steady_clock::time_point now) {
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > options_.ttl)
      it = sessions_.erase(it);
    else
      ++it;
  }
}

std::shared_ptr<Service::Entry> Service::find(const std::string& id) {
  std::lock_guard lock(mu_);
  const auto now = options_.now();
  expire_locked(now);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->last_used = now;
  return it->second;
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    std::string id, action;
    if (!split_path(path, id, action)) return error(404, "not_found", "no route " + std::string(path));
    if (id.empty()) {
      if (method != "POST") return error(405, "method_not_allowed", "use POST /sessions");
      return create(body);
    }
    if (action.empty() && method == "DELETE") {
      std::lock_guard lock(mu_);
      expire_locked(options_.now());
      if (sessions_.erase(id) == 0) return error(404, "unknown_session", "no session '" + id + "'");
      return reply(200, json{{"id", id}, {"deleted", true}});
    }
    const bool known_action = action.empty() || action == "step" || action == "whatif" || action == "undo";
    if (!known_action) return error(404, "not_found", "no route " + std::string(path));
    if (action.empty() ? method != "GET" : method != "POST")
      return error(405, "method_not_allowed", std::string(method) + " not allowed on " + std::string(path));
    auto e = find(id);
    if (!e) return error(404, "unknown_session", "no session '" + id + "'");
    if (action.empty()) return view(id, *e);
    if (action == "step") return step(id, *e, body);
    if (action == "whatif") return what_if(*e, body);
    return undo(id, *e);
  } catch (const Failure& f) {
    return error(f.status, f.code, f.message);
  } catch (const ParseError& e) {
    return reply(400, json{{"error",
                            {{"code", "parse_error"},
                             {"message", e.what()},
                             {"line", e.line()},
                             {"column", e.column()}}}});
  } catch (const InvalidLetter& e) {
    return error(400, "invalid_letter", e.what());
  } catch (const ValidationError& e) {
    return error(400, "invalid_spec", e.what());
  } catch (const ResourceExhausted& e) {
    return error(503, "resource_cap", e.what());
  }
}

Response Service::create(std::string_view body) {
  const json req = parse_body(body);
  if (!req.contains("spec") || !req["spec"].is_string())
    throw Failure{400, "bad_request", "field 'spec' (string) is required"};
  synth::SolveOptions opts = options_.solve;
  if (req.contains("k_max")) {
    if (!req["k_max"].is_number_unsigned()) throw Failure{400, "bad_request", "'k_max' must be a non-negative integer"};
    opts.k_max = req["k_max"].get<std::uint32_t>();
  }
  if (req.contains("mode")) {
    const auto m = req["mode"].is_string() ? req["mode"].get<std::string>() : "";
    if (m == "enumerate")
      opts.mode = synth::Mode::Enumerate;
    else if (m == "binsearch")
      opts.mode = synth::Mode::BinarySearch;
    else
      throw Failure{400, "bad_request", "'mode' must be \"enumerate\" or \"binsearch\""};
  }
  const auto spec = ctl::parse_spec(req["spec"].get<std::string>());
  std::unique_ptr<exec::Session> session;
  try {
    session = exec::Session::create(spec, opts);
  } catch (const Unrealizable& e) {
    return reply(422, json{{"error", {{"code", "unrealizable"}, {"message", e.what()}}},
                           {"realizable", false},
                           {"k_max", opts.k_max},
                           {"inputs", spec.inputs},
                           {"outputs", spec.outputs}});
  }
  auto entry = std::make_shared<Entry>();
  entry->session = std::move(session);
  const auto& s = *entry->session;
  json out{{"realizable", true},
           {"k", s.k()},
           {"mode", mode_name(s.mode())},
           {"inputs", s.inputs()},
           {"outputs", s.outputs()},
           {"initial_input", names(spec.initial_input, spec.inputs)},
           {"initial_output", names(s.initial_output(), s.outputs())},
           {"depth", 0},
           {"digest", s.digest()},
           {"state", s.describe_state()}};
  std::lock_guard lock(mu_);
  const auto now = options_.now();
  expire_locked(now);
  char id[24];
  std::snprintf(id, sizeof id, "s%04llu", static_cast<unsigned long long>(next_id_++));
  entry->last_used = now;
  sessions_.emplace(id, std::move(entry));
  out["id"] = id;
  return reply(201, out);
}

Response Service::step(const std::string& id, Entry& e, std::string_view body) {
  const json req = parse_body(body);
  auto& s = *e.session;
  const Letter in = letter_of(req.value("input", json::array()), s.inputs());
  std::lock_guard lock(e.mu);
  const Letter out = s.step(in);
  return reply(200, json{{"id", id},
                         {"depth", s.depth()},
                         {"input", names(in, s.inputs())},
                         {"output", names(out, s.outputs())},
                         {"digest", s.digest()},
                         {"state", s.describe_state()}});
}

Response Service::what_if(Entry& e, std::string_view body) {
  const json req = parse_body(body);
  auto& s = *e.session;
  const Letter in = letter_of(req.value("input", json::array()), s.inputs());
  exec::Verdict v;
  if (req.contains("assignment")) {
    const auto& a = req["assignment"];
    if (!a.is_object()) throw Failure{400, "bad_request", "'assignment' must map names to booleans"};
    std::map<std::string, bool> m;
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!it.value().is_boolean()) throw Failure{400, "bad_request", "'assignment' must map names to booleans"};
      m[it.key()] = it.value().get<bool>();
    }
    v = s.what_if(m, in);
  } else {
    const auto p = req.value("prefix", json(""));
    if (!p.is_string()) throw Failure{400, "bad_request", "'prefix' must be a string of 0 and 1"};
    v = s.what_if(p.get<std::string>(), in);
  }
  return reply(200, json{{"verdict", exec::verdict_name(v)}, {"digest", s.digest()}});
}

Response Service::view(const std::string& id, Entry& e) {
  std::lock_guard lock(e.mu);
  const auto& s = *e.session;
  json history = json::array();
  for (const auto& f : s.history())
    history.push_back({{"input", names(f.input, s.inputs())}, {"output", names(f.chosen.output, s.outputs())}});
  return reply(200, json{{"id", id},
                         {"k", s.k()},
                         {"mode", mode_name(s.mode())},
                         {"inputs", s.inputs()},
                         {"outputs", s.outputs()},
                         {"initial_output", names(s.initial_output(), s.outputs())},
                         {"history", history},
                         {"depth", s.depth()},
                         {"digest", s.digest()},
                         {"state", s.describe_state()}});
}

Response Service::undo(const std::string& id, Entry& e) {
  std::lock_guard lock(e.mu);
  auto& s = *e.session;
  if (s.depth() == 0) return error(409, "nothing_to_undo", "no step to undo");
  s.undo();
  return reply(200, json{{"id", id}, {"depth", s.depth()}, {"digest", s.digest()}, {"state", s.describe_state()}});
}

void serve(Service& service, const std::string& host, int port, const std::string& static_dir) {
  httplib::Server server;
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir))
    throw ValidationError("cannot serve static files from " + static_dir);
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Post(R"(/sessions(/.*)?)", forward);
  server.Get(R"(/sessions(/.*)?)", forward);
  server.Delete(R"(/sessions(/.*)?)", forward);
  if (!server.listen(host, port)) throw ResourceExhausted("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace succinct::service
