#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "succinct/ctl.hpp"
#include "succinct/safety.hpp"

namespace succinct::exec {

using synth::CounterMap;
using synth::Mode;

enum class Verdict { Winning, Losing, Invalid };
const char* verdict_name(Verdict v);

/// One committed step: the input received, the letter chosen for it and the
/// state and letter that were current before it.
struct Frame {
  Letter input = 0;
  AnnotatedOutput chosen;
  CounterMap previous;
  AnnotatedOutput previous_chosen;
};

/// On-the-fly controller. It keeps the current counter state and the letter
/// already emitted at the current node; each input advances the state along
/// that letter and picks the least winning letter for the new node.
/// Mutations are serialized; queries may run concurrently between them.
class Session {
 public:
  /// Solves `spec` and starts at the initial state. Throws Unrealizable if
  /// no bound up to `options.k_max` wins.
  static std::unique_ptr<Session> create(const ctl::Spec& spec, const synth::SolveOptions& options);
  static std::unique_ptr<Session> create(std::shared_ptr<const automata::UniversalAutomaton> u,
                                         const synth::SolveOptions& options);

  explicit Session(synth::Strategy strategy);

  const std::vector<std::string>& inputs() const;
  const std::vector<std::string>& outputs() const;
  std::uint32_t k() const { return strategy_.game->k(); }
  Mode mode() const { return strategy_.mode; }

  /// Output emitted at the root, before any input.
  Letter initial_output() const;
  /// Advances on `input` and returns the visible output chosen for it.
  Letter step(Letter input);
  /// Pops the last step. Throws ContractViolation on a fresh session.
  void undo();

  /// Whether some output letter starting with `prefix` (canonical bits) would
  /// still win for the node reached on `next_input`.
  Verdict what_if(std::string_view prefix, Letter next_input = 0) const;
  /// Same, for a partial assignment of output propositions by name.
  Verdict what_if(const std::map<std::string, bool>& assignment, Letter next_input = 0) const;

  CounterMap current() const;
  AnnotatedOutput chosen() const;
  std::string digest() const;
  std::string describe_state() const;
  std::vector<Frame> history() const;
  std::size_t depth() const;

 private:
  Verdict what_if_locked(std::string_view prefix, Letter next_input) const;
  std::shared_lock<std::shared_mutex> read_lock() const;
  std::unique_lock<std::shared_mutex> write_lock() const;

  synth::Strategy strategy_;
  mutable std::shared_mutex mu_;
  mutable std::atomic<int> writers_waiting_{0};
  CounterMap current_;
  AnnotatedOutput chosen_;
  std::vector<Frame> history_;
};

}  // namespace succinct::exec
