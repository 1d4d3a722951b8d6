#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "succinct/annotated_output.hpp"
#include "succinct/error.hpp"
#include "succinct/letter.hpp"

namespace succinct::mealy {

using StateId = std::uint32_t;

/// Finite Mealy machine over input alphabet 2^inputs. Transitions and labels
/// are stored densely, indexed by state * |alphabet| + input letter.
template <class Label>
struct BasicMachine {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::size_t num_states = 0;
  std::vector<StateId> next;
  std::vector<Label> labels;
  StateId start = 0;
  Letter initial_input = 0;

  std::size_t alphabet() const { return alphabet_size(inputs.size()); }
  std::size_t index(StateId s, Letter in) const { return s * alphabet() + static_cast<std::size_t>(in); }
  StateId successor(StateId s, Letter in) const { return next[index(s, in)]; }
  const Label& label(StateId s, Letter in) const { return labels[index(s, in)]; }

  /// Allocates a machine with every transition going to state 0.
  static BasicMachine with_states(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                  std::size_t num_states) {
    BasicMachine m;
    m.inputs = std::move(inputs);
    m.outputs = std::move(outputs);
    m.num_states = num_states;
    m.next.assign(num_states * m.alphabet(), 0);
    m.labels.assign(num_states * m.alphabet(), Label{});
    return m;
  }

  void set(StateId s, Letter in, StateId to, Label out) {
    next[index(s, in)] = to;
    labels[index(s, in)] = std::move(out);
  }

  /// Throws ValidationError on dangling state references or size mismatches.
  void validate() const {
    if (inputs.size() > kMaxPropositions || outputs.size() > kMaxPropositions)
      throw ValidationError("too many propositions");
    if (num_states == 0) throw ValidationError("machine has no states");
    if (next.size() != num_states * alphabet() || labels.size() != next.size())
      throw ValidationError("transition table does not cover states x input letters");
    if (start >= num_states) throw ValidationError("start state out of range");
    if (initial_input >> inputs.size()) throw ValidationError("initial input uses undeclared bits");
    for (auto t : next)
      if (t >= num_states) throw ValidationError("dangling successor " + std::to_string(t));
  }

  bool operator==(const BasicMachine&) const = default;
};

using MealyMachine = BasicMachine<Letter>;
using AnnotatedMachine = BasicMachine<AnnotatedOutput>;

template <class Label>
struct TraceLetter {
  Letter input;
  Label output;
  bool operator==(const TraceLetter&) const = default;
};

/// ω_0 … ω_n: ω_0 pairs the initial input with l(start, initial input);
/// each later letter pairs the provided input with the label of the
/// transition taken on it.
template <class Label>
std::vector<TraceLetter<Label>> run_trace(const BasicMachine<Label>& m, std::span<const Letter> inputs) {
  std::vector<TraceLetter<Label>> word;
  word.reserve(inputs.size() + 1);
  StateId s = m.start;
  word.push_back({m.initial_input, m.label(s, m.initial_input)});
  s = m.successor(s, m.initial_input);
  for (Letter in : inputs) {
    word.push_back({in, m.label(s, in)});
    s = m.successor(s, in);
  }
  return word;
}

/// Replaces every annotated label by its visible output part.
MealyMachine restrict_outputs(const AnnotatedMachine& m);

/// Finite quotient of the computation tree: one node per reachable
/// (state, last input) pair. Node 0 is (start, initial input).
struct KripkeQuotient {
  std::size_t alphabet = 0;
  std::vector<StateId> state;
  std::vector<Letter> input;
  std::vector<Letter> output;
  /// succ[node * alphabet + σ] = node for (τ(state, input), σ).
  std::vector<std::uint32_t> succ;

  std::size_t size() const { return state.size(); }
  std::uint32_t successor(std::uint32_t node, Letter in) const {
    return succ[node * alphabet + static_cast<std::size_t>(in)];
  }
};

KripkeQuotient to_kripke(const MealyMachine& m);

/// Text format:
///   mealy
///   inputs a, b
///   outputs g
///   init {a}
///   states 2
///   start 0
///   0 {} -> 1 / {g}
///   ... one line per (state, input letter)
std::string serialize(const MealyMachine& m);
MealyMachine deserialize(std::string_view text);

/// Graphviz: node per state, edge label "inputs / outputs".
std::string to_dot(const MealyMachine& m);

}  // namespace succinct::mealy
