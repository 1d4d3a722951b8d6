#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "succinct/annotated_output.hpp"
#include "succinct/ctl.hpp"
#include "succinct/mealy.hpp"
#include "succinct/pbool.hpp"

namespace succinct::automata {

/// Opaque automaton state id.
using UState = std::uint64_t;

/// "State `state` must accept the subtree in direction `direction`".
struct Obligation {
  UState state;
  Letter direction;

  bool operator==(const Obligation&) const = default;
  auto operator<=>(const Obligation&) const = default;
};

using Obligations = std::vector<Obligation>;

/// Receives one valid letter together with, for each queried state (same
/// order), the obligations that letter sends. Return false to stop.
using LetterVisitor =
    std::function<bool(const AnnotatedOutput& letter, const std::vector<const Obligations*>& successors)>;

/// Universal co-Büchi tree automaton over annotated output letters, with
/// transitions computed on demand.
class UniversalAutomaton {
 public:
  virtual ~UniversalAutomaton() = default;

  virtual const std::vector<std::string>& inputs() const = 0;
  virtual const std::vector<std::string>& outputs() const = 0;
  virtual Letter initial_input() const = 0;
  virtual const LetterLayout& layout() const = 0;
  virtual UState initial() const = 0;
  virtual bool is_final(UState q) const = 0;

  /// Obligations of `q` under `letter`, or nullopt if the letter is not a
  /// transition of `q`.
  virtual std::optional<Obligations> successors(UState q, const AnnotatedOutput& letter) const = 0;

  /// Visits, in ascending canonical bit order, letters valid at every state
  /// of `states` (sorted, distinct) whose encoding starts with `prefix`.
  /// Bits and fields that no queried state reads are pinned to 0 unless the
  /// prefix fixes them, so each visited letter stands for the class of
  /// letters that agree with it on everything the states read. The least
  /// letter of a class is always the one visited.
  virtual void for_each_letter(std::span<const UState> states, std::string_view prefix,
                               const LetterVisitor& visit) const = 0;

  virtual std::string describe(UState q) const = 0;

  std::size_t directions() const { return alphabet_size(inputs().size()); }
};

/// Alternating co-Büchi automaton of an NNF CTL formula over Mealy trees.
/// A state is a subformula that can carry an obligation (the root, operands
/// of AX/EX, and until/release nodes), paired with the input bits of the
/// current node that its transition inspects.
class AlternatingAutomaton {
 public:
  enum class Truth { False, True, Unknown };

  explicit AlternatingAutomaton(const ctl::Spec& spec);

  /// The spec with its formula in NNF.
  const ctl::Spec& spec() const { return spec_; }
  const ctl::SubformulaDag& dag() const { return dag_; }
  std::size_t directions() const { return directions_; }

  UState initial() const;
  /// Until states only.
  bool is_final(UState q) const;

  UState state_for(std::size_t subformula, Letter direction) const;
  std::size_t subformula_of(UState q) const { return static_cast<std::size_t>(q / directions_); }
  Letter memory_of(UState q) const { return q % directions_; }

  /// Input bits the state's transition reads at the current node.
  Letter input_mask(std::size_t subformula) const { return input_mask_[subformula]; }
  /// Output bits the state's transition reads.
  Letter output_mask(std::size_t subformula) const { return output_mask_[subformula]; }
  bool is_slot(std::size_t subformula) const { return slot_index_[subformula] >= 0; }
  /// Subformulas that can be states, ascending; one letter field each.
  const std::vector<std::size_t>& slots() const { return slots_; }
  int slot_index(std::size_t subformula) const { return slot_index_[subformula]; }
  /// Upper bound on the number of minimal models of any transition of the
  /// slot, used to size its letter field.
  std::uint64_t model_bound(std::size_t subformula) const { return bound_[subformula]; }

  /// Transition formula over atoms `subformula * directions() + direction`.
  PBool transition(UState q, Letter output) const;
  /// Decodes a transition atom into the obligation it denotes.
  Obligation obligation_of(std::uint64_t atom) const;

  /// Evaluates the current-node part of the transition with only the output
  /// bits in `known` fixed; future obligations count as satisfiable.
  Truth partial(UState q, Letter known, Letter output) const;

  std::string describe(UState q) const;

 private:
  PBool delta(std::size_t node, Letter memory, Letter output) const;
  Truth partial_at(std::size_t node, Letter memory, Letter known, Letter output) const;
  PBool atoms_over_directions(std::size_t target, bool universal) const;

  ctl::Spec spec_;
  ctl::SubformulaDag dag_;
  std::size_t directions_;
  std::vector<Letter> input_mask_;
  std::vector<Letter> output_mask_;
  std::vector<int> atom_input_;   // input index of an atom node, or -1
  std::vector<int> atom_output_;  // output index of an atom node, or -1
  std::vector<std::uint8_t> propositional_;
  std::vector<std::uint64_t> bound_;
  std::vector<std::size_t> slots_;
  std::vector<int> slot_index_;
};

std::shared_ptr<const AlternatingAutomaton> ctl_to_alternating(const ctl::Spec& spec);

/// Universal automaton whose letters resolve every disjunction of the
/// alternating one: per slot, an index into the minimal models of the
/// slot's transition.
std::shared_ptr<const UniversalAutomaton> to_universal(std::shared_ptr<const AlternatingAutomaton> alt);

/// Explicit universal co-Büchi automaton read from text:
///
///   automaton
///   inputs r
///   outputs g
///   states wait, busy
///   initial wait
///   final busy
///   init {}
///   wait {}  -> (wait, *)
///   wait {g} -> (wait, {}) (busy, {r})
///   busy *   -> (busy, *)
///
/// `*` on the left matches every output letter; in a target it stands for
/// every direction. Later lines override earlier ones for the same pair. A
/// (state, output) pair without a line is not a transition of that state.
std::shared_ptr<const UniversalAutomaton> parse_explicit_automaton(std::string_view text);

/// Decides whether `m` is accepted by the alternating automaton by solving
/// the co-Büchi acceptance game on (quotient node, state). With
/// `minimal_only` false the existential player may pick any satisfying set.
bool alternating_accepts(const AlternatingAutomaton& a, const mealy::MealyMachine& m, bool minimal_only = true);

/// Decides acceptance of an annotated machine by building its run graph: it
/// must use only valid letters and contain no reachable cycle through a
/// final state.
bool universal_accepts(const UniversalAutomaton& u, const mealy::AnnotatedMachine& m);

}  // namespace succinct::automata
