#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "succinct/automata.hpp"
#include "succinct/mealy.hpp"

namespace succinct::synth {

using automata::UState;
using automata::UniversalAutomaton;

/// State of the counting safety automaton: the automaton states that still
/// carry an obligation, each with the largest number of final states seen
/// on a run-graph path into it. Sorted by state; empty means no obligation.
using CounterMap = std::vector<std::pair<UState, std::uint32_t>>;

enum class Mode { Enumerate, BinarySearch };

CounterMap initial_state(const UniversalAutomaton& u);

/// One step of the safety automaton in direction `input`. Returns nullopt
/// when a counter would exceed k (Blocked). Throws InvalidLetter if the
/// letter is not a transition of some state of `f`.
std::optional<CounterMap> safety_step(const UniversalAutomaton& u, const CounterMap& f,
                                      const AnnotatedOutput& letter, Letter input, std::uint32_t k);

std::string describe(const UniversalAutomaton& u, const CounterMap& f);
/// Short stable hex hash of a counter map.
std::string digest(const CounterMap& f);

struct GameLimits {
  /// Maximum number of counter maps the arena may hold.
  std::size_t max_nodes = 2'000'000;
};

/// Safety game of the counting automaton for one bound k. The arena is
/// explored lazily from queried states; verdicts are greatest-fixpoint
/// winning regions and never change once computed. Thread-safe.
class SafetyGame {
 public:
  SafetyGame(std::shared_ptr<const UniversalAutomaton> u, std::uint32_t k, GameLimits limits = {});

  const UniversalAutomaton& automaton() const { return *u_; }
  std::shared_ptr<const UniversalAutomaton> automaton_ptr() const { return u_; }
  std::uint32_t k() const { return k_; }
  std::size_t arena_size() const;

  bool is_winning(const CounterMap& f);
  /// Some letter whose encoding starts with `prefix` is valid at f and leads
  /// to winning states in every direction.
  bool good_output_exists(const CounterMap& f, std::string_view prefix);
  /// Least winning letter in canonical bit order. Throws ContractViolation
  /// if f is losing.
  AnnotatedOutput find_output(const CounterMap& f, Mode mode);
  /// Winning successors of `letter` in every direction, or nullopt.
  std::optional<std::vector<CounterMap>> winning_successors(const CounterMap& f, const AnnotatedOutput& letter);

 private:
  struct Node {
    CounterMap map;
    std::vector<std::vector<std::uint32_t>> options;
    std::vector<std::uint8_t> option_dead;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> preds;
    std::uint32_t alive = 0;
    bool explored = false;
    bool dead = false;
  };
  struct MapHash {
    std::size_t operator()(const CounterMap& m) const;
  };

  // Callers hold mu_.
  std::uint32_t intern(CounterMap m, std::vector<std::uint32_t>& fresh);
  std::uint32_t prepare(const CounterMap& f);
  bool over_bound(const CounterMap& f) const;
  bool successors_into(const CounterMap& f, const std::vector<const automata::Obligations*>& succ, Letter dir,
                       CounterMap& out) const;
  bool letter_wins(const CounterMap& f, const std::vector<const automata::Obligations*>& succ);
  std::vector<UState> states_of(const CounterMap& f) const;
  bool good_output_locked(const CounterMap& f, std::string_view prefix);

  std::shared_ptr<const UniversalAutomaton> u_;
  std::uint32_t k_;
  GameLimits limits_;
  bool broken_ = false;
  mutable std::mutex mu_;
  std::vector<Node> nodes_;
  std::unordered_map<CounterMap, std::uint32_t, MapHash> ids_;
};

/// Chosen letters of a solved game, starting from `initial`.
struct Strategy {
  std::shared_ptr<SafetyGame> game;
  CounterMap initial;
  Mode mode = Mode::Enumerate;

  AnnotatedOutput choose(const CounterMap& f) const { return game->find_output(f, mode); }
};

struct SolveOptions {
  std::uint32_t k_max = 32;
  GameLimits limits;
  Mode mode = Mode::Enumerate;
  /// Re-solve at the next scheduled bound after a win and require it to
  /// win too.
  bool audit_monotonicity = true;
};

struct SolveResult {
  bool realizable = false;
  std::uint32_t k = 0;
  std::vector<std::uint32_t> tried;
  Strategy strategy;
};

/// 0, 1, 2, 4, ... doubling up to `cap`; `cap` itself is always last.
std::vector<std::uint32_t> k_schedule(std::uint32_t cap);

/// Default cap: SUCCINCT_K_MAX from the environment, else 32.
std::uint32_t default_k_max();

SolveResult solve(std::shared_ptr<const UniversalAutomaton> u, const SolveOptions& options = {});

/// Mealy machine simulating the strategy; labels are annotated letters.
mealy::AnnotatedMachine extract_mealy(const Strategy& s);

}  // namespace succinct::synth
