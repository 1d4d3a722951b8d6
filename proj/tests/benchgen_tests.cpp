#include <chrono>

#include "doctest.h"
#include "succinct/automata.hpp"
#include "succinct/benchgen.hpp"
#include "succinct/error.hpp"
#include "succinct/safety.hpp"
#include "support.hpp"

using namespace succinct;
using namespace succinct::bench;

namespace {

Atm load(const std::string& name) { return parse_atm(testing::read_file(testing::fixture("atm/" + name))); }

std::vector<bool> tape_of(std::uint32_t bits, std::uint32_t b) {
  std::vector<bool> t(b);
  for (std::uint32_t p = 0; p < b; ++p) t[p] = (bits >> p) & 1U;
  return t;
}

struct Expected {
  std::string file;
  // Acceptance per tape, indexed by tape bits (cell 1 is bit 0).
  std::vector<bool> accepts;
};

// Worked out by hand from the fixture listings.
const std::vector<Expected> kExpected{
    {"accept_now.atm", {true, true}},
    {"loop.atm", {false, false}},
    {"read_first.atm", {false, true, false, true}},
    {"exists_branch.atm", {true, false}},
    {"forall_branch.atm", {false, true}},
    {"both_ones.atm", {false, false, false, true}},
    {"write_back.atm", {true, false, true, false}},
    {"toggle.atm", {false, false, true, false}},
};

// h at the first node below the root of the synthesized machine.
bool synthesized_halts(const ctl::Spec& spec, std::uint32_t tape_bits) {
  auto u = automata::to_universal(automata::ctl_to_alternating(spec));
  auto r = synth::solve(u, {.k_max = 4});
  REQUIRE(r.realizable);
  const auto m = mealy::restrict_outputs(synth::extract_mealy(r.strategy));
  const std::vector<Letter> in{tape_bits};
  const auto word = mealy::run_trace(m, std::span<const Letter>(in));
  const auto h = *index_of(spec.outputs, "h");
  return (word[1].output >> h) & 1U;
}

}  // namespace

TEST_CASE("counter bound") {
  CHECK(counter_max(2, 2) == 16);
  CHECK(counter_max(1, 1) == 2);
  CHECK(counter_max(3, 2) == 24);
  CHECK(counter_max(load("both_ones.atm")) == 3 * 4 * 2);
}

TEST_CASE("direct halting semantics") {
  for (const auto& e : kExpected) {
    INFO(e.file);
    const auto atm = load(e.file);
    for (std::uint32_t bits = 0; bits < e.accepts.size(); ++bits) {
      INFO(bits);
      CHECK(atm_halts(atm, tape_of(bits, atm.tape_length)) == e.accepts[bits]);
    }
  }
  CHECK_THROWS_AS(atm_halts(load("loop.atm"), {true, false}), ContractViolation);
}

TEST_CASE("encoding names") {
  const auto e = encoding_of(load("both_ones.atm"));
  CHECK(e.tape_inputs == std::vector<std::string>{"x1", "x2"});
  CHECK(e.head == std::vector<std::string>{"p1", "p2"});
  CHECK(e.state_bits.size() == 2);
  CHECK(e.counter_bits.size() == 5);  // 0..24
  const auto spec = gen_phi_b(load("both_ones.atm"));
  CHECK(spec.inputs == std::vector<std::string>{"x1", "x2", "alt"});
  CHECK(spec.initial_input == 0);
}

TEST_CASE("synthesized machines predict halting") {
  for (const auto& e : kExpected) {
    INFO(e.file);
    const auto atm = load(e.file);
    const auto spec = gen_phi_b(atm);
    for (std::uint32_t bits = 0; bits < e.accepts.size(); ++bits) {
      INFO(bits);
      CHECK(synthesized_halts(spec, bits) == atm_halts(atm, tape_of(bits, atm.tape_length)));
    }
  }
}

TEST_CASE("formula size is polynomial in the machine description") {
  for (std::uint32_t b = 1; b <= 3; ++b) {
    std::string text = "atm\nstates q0, q1, acc\naccepting acc\nstart q0\ntape " + std::to_string(b) +
                       "\nq0 0 -> q1 1 > | acc 0 -\nq1 1 -> q0 0 < | q1 1 >\n";
    const auto atm = parse_atm(text);
    const auto e = encoding_of(atm);
    const double n = static_cast<double>(atm.states.size() + b + e.counter_bits.size());
    const auto size = ctl::formula_size(gen_phi_b(atm).formula);
    INFO(b << " " << size);
    CHECK(static_cast<double>(size) <= 50.0 * n * n);
  }
  // Beyond the proposition limit generation is refused rather than truncated.
  CHECK_THROWS_AS(gen_phi_b(parse_atm("atm\nstates q\nstart q\ntape 8\n")), ValidationError);
}

TEST_CASE("malformed machine text") {
  CHECK_THROWS_AS(parse_atm("tm\n"), ParseError);
  CHECK_THROWS_AS(parse_atm("atm\nstates q\nstart q\n"), ValidationError);
  CHECK_THROWS_AS(parse_atm("atm\nstates q\nstart r\ntape 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_atm("atm\nstates q\nstart q\ntape 1\nq 2 -> q 0 - | q 0 -\n"), ParseError);
  CHECK_THROWS_AS(parse_atm("atm\nstates q\nstart q\ntape 1\nq 0 -> q 0 ^ | q 0 -\n"), ParseError);
  CHECK_THROWS_AS(parse_atm("atm\nstates q\nstart q\ntape 1\nq 0 -> q 0 - | q 0 -\nq 0 -> q 0 - | q 0 -\n"),
                  ParseError);
}
