#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "succinct/ctl.hpp"
#include "succinct/mealy.hpp"

namespace succinct::otm {

enum class Move { Left, Stay, Right };

/// What a transition writes and where each head goes afterwards.
struct Action {
  std::uint32_t state = 0;
  Letter input = 0;
  std::uint32_t storage = 0;
  Letter output = 0;
  Move input_move = Move::Stay;
  Move storage_move = Move::Stay;
  Move output_move = Move::Stay;
};

/// Online Turing machine over input letters 2^inputs and output letters
/// 2^outputs; the empty letter is the blank of both. Storage symbol 0 is the
/// blank `_`.
///
/// Text format (one directive or transition per line, `#` comments):
///
///   otm
///   inputs i
///   outputs g
///   symbols 0, 1                  # storage symbols besides _
///   input_states r
///   output_states w
///   start w
///   storage _ _                   # initial storage word, c cells
///   init {}                       # initial input letter
///   # state  input storage output -> state' input' move storage' move output' move
///   w {i} * * -> r * - * - {g} >
///   r *   * * -> w * > * - * -
///
/// Moves are `<`, `-`, `>`. On the left `*` matches any symbol; on the right
/// it copies the symbol read. The first matching line wins.
struct Machine {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> symbols;  // symbols[0] == "_"
  std::vector<std::string> states;
  std::vector<std::uint8_t> output_state;
  std::uint32_t start = 0;
  std::vector<std::uint32_t> storage;
  Letter initial_input = 0;
  std::vector<std::optional<Action>> delta;

  std::size_t index(std::uint32_t s, Letter in, std::uint32_t t, Letter out) const;
  const std::optional<Action>& action(std::uint32_t s, Letter in, std::uint32_t t, Letter out) const {
    return delta[index(s, in, t, out)];
  }
};

Machine parse_machine(std::string_view text);

struct Violation {
  std::string entry;
  std::string rule;
};

/// Checks every transition against the online restrictions. Empty means ok.
std::vector<Violation> validate(const Machine& m);

struct Simulation {
  /// outputs[0] answers the initial input, outputs[t] the t-th given input.
  std::vector<Letter> outputs;
  /// Steps taken since the previous write (or the start) for each output.
  std::vector<std::size_t> steps;
  /// Set when a response did not arrive within the budget; outputs stop there.
  bool timed_out = false;
};

Simulation simulate(const Machine& m, std::span<const Letter> inputs, std::size_t step_budget);

struct UnravelOptions {
  std::size_t max_steps = 1'000'000;
  std::size_t max_states = 1'000'000;
};

/// Mealy machine of the machine's behaviour. State 0 is the start, state 1
/// the sink reached when a response never comes; it outputs the empty letter
/// forever. Throws ValidationError on invalid machines and ResourceExhausted
/// when a response runs longer than the step cap without repeating a
/// configuration, or the state count exceeds its cap.
mealy::MealyMachine unravel(const Machine& m, const UnravelOptions& options = {});
inline constexpr mealy::StateId kFailState = 1;

/// Model checks the unraveled machine. The spec must declare the machine's
/// propositions and initial input.
bool verify(const Machine& m, const ctl::Spec& spec, const UnravelOptions& options = {});

}  // namespace succinct::otm
