#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "succinct/ctl.hpp"
#include "succinct/executor.hpp"

namespace succinct::service {

struct Response {
  int status = 200;
  /// Compact JSON with sorted keys.
  std::string body;
};

struct Options {
  std::chrono::seconds ttl{30 * 60};
  synth::SolveOptions solve;
  std::function<std::chrono::steady_clock::time_point()> now = [] { return std::chrono::steady_clock::now(); };
};

/// Session registry behind the JSON routes
///
///   POST   /sessions               {"spec": text, "k_max"?: n, "mode"?: "enumerate"|"binsearch"}
///   POST   /sessions/{id}/step     {"input": [names]}
///   POST   /sessions/{id}/whatif   {"prefix": "01"} or {"assignment": {name: bool}}, "input"?: [names]
///   GET    /sessions/{id}
///   POST   /sessions/{id}/undo
///   DELETE /sessions/{id}
///
/// Errors are {"error": {"code", "message"}} with codes bad_request,
/// parse_error, invalid_spec, unrealizable, resource_cap, unknown_session,
/// invalid_letter, nothing_to_undo, not_found, method_not_allowed.
/// Mutations on one session are serialized; reads share the session.
class Service {
 public:
  explicit Service(Options options = {});

  Response handle(std::string_view method, std::string_view path, std::string_view body);

  std::size_t session_count() const;

 private:
  struct Entry {
    std::unique_ptr<exec::Session> session;
    // Held by step, undo and view so each response is one consistent
    // snapshot; what-if goes straight to the session's shared lock.
    std::mutex mu;
    std::chrono::steady_clock::time_point last_used;
  };

  std::shared_ptr<Entry> find(const std::string& id);
  void expire_locked(std::chrono::steady_clock::time_point now);

  Response create(std::string_view body);
  Response step(const std::string& id, Entry& e, std::string_view body);
  Response what_if(Entry& e, std::string_view body);
  Response view(const std::string& id, Entry& e);
  Response undo(const std::string& id, Entry& e);

  Options options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// Blocks serving `service` over HTTP. Static files under `static_dir`, when
/// non-empty, are mounted at `/`.
void serve(Service& service, const std::string& host, int port, const std::string& static_dir = "");

}  // namespace succinct::service
