#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "succinct/ctl.hpp"

namespace succinct::bench {

enum class Quantifier { Existential, Universal };
enum class HeadMove { Left, Stay, Right };

struct Alternative {
  std::uint32_t state = 0;
  bool write = false;
  HeadMove move = HeadMove::Stay;
};

/// Space-bounded alternating Turing machine over a binary tape of length b.
/// Every (state, read bit) has exactly two alternatives; the head stays put
/// when a move would leave the tape.
///
/// Text format:
///
///   atm
///   states q0, q1, acc
///   universal q1              # other states are existential
///   accepting acc
///   start q0
///   tape 2
///   q0 0 -> q1 1 > | acc 0 -  # state, read bit -> two alternatives
///
/// A missing (state, bit) line defaults to two self-loops that keep the tape.
struct Atm {
  std::vector<std::string> states;
  std::vector<Quantifier> quantifier;
  std::vector<std::uint8_t> accepting;
  std::uint32_t start = 0;
  std::uint32_t tape_length = 1;
  /// delta[state * 2 + bit]
  std::vector<std::array<Alternative, 2>> delta;
};

Atm parse_atm(std::string_view text);

/// |Q| * 2^b * b, the number of configurations.
std::uint64_t counter_max(const Atm& atm);
std::uint64_t counter_max(std::uint64_t states, std::uint64_t tape_length);

/// Halting by acceptance within counter_max steps. `tape[p]` is cell p + 1.
bool atm_halts(const Atm& atm, const std::vector<bool>& tape);

/// Propositions of the generated spec.
struct Encoding {
  std::vector<std::string> tape_inputs;   // x1..xb
  std::string alt = "alt";
  std::vector<std::string> tape;          // t1..tb
  std::vector<std::string> head;          // p1..pb, one-hot
  std::vector<std::string> state_bits;    // s0.. little-endian
  std::vector<std::string> counter_bits;  // c0.. little-endian
  std::string halts = "h";
  std::string run = "run";
};

Encoding encoding_of(const Atm& atm);

/// Spec whose models simulate the machine from the tape given by the first
/// input and predict acceptance in `h` at that first node.
ctl::Spec gen_phi_b(const Atm& atm);

}  // namespace succinct::bench
