#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "succinct/error.hpp"
#include "succinct/otm.hpp"
#include "support.hpp"

using namespace succinct;
using namespace succinct::otm;

namespace {

Machine load(const std::string& name) { return parse_machine(testing::read_file(testing::fixture("otm/" + name))); }

ctl::Spec load_spec(const std::string& name) {
  return ctl::parse_spec(testing::read_file(testing::fixture("otm/" + name)));
}

const std::vector<std::string> kFixtures{"copy.otm",        "constant.otm", "parity.otm", "delay2.otm",
                                         "answer_once.otm", "spin.otm",     "late_spin.otm"};

std::uint32_t state(const Machine& m, const std::string& name) {
  return static_cast<std::uint32_t>(std::find(m.states.begin(), m.states.end(), name) - m.states.begin());
}

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == rule; });
}

}  // namespace

TEST_CASE("fixtures are valid online machines") {
  for (const auto& name : kFixtures) {
    INFO(name);
    const auto v = validate(load(name));
    CHECK(v.empty());
    for (const auto& x : v) MESSAGE(x.entry << ": " << x.rule);
  }
}

TEST_CASE("copy machine simulation") {
  const auto m = load("copy.otm");
  const std::vector<Letter> in{1, 0, 1};
  const auto r = simulate(m, in, 100);
  CHECK_FALSE(r.timed_out);
  CHECK(r.outputs == std::vector<Letter>{0, 1, 0, 1});
  CHECK(r.steps == std::vector<std::size_t>{1, 2, 2, 2});
}

TEST_CASE("constant and delay machines") {
  const std::vector<Letter> in{1, 1, 0, 0, 1, 0};
  CHECK(simulate(load("constant.otm"), in, 10).outputs == std::vector<Letter>(7, 1));
  // Outputs at t repeat the input at t-2; position 0 is the initial input.
  CHECK(simulate(load("delay2.otm"), in, 10).outputs == std::vector<Letter>{0, 0, 0, 1, 1, 0, 0});
  CHECK(simulate(load("parity.otm"), in, 10).outputs == std::vector<Letter>{0, 1, 0, 0, 0, 1, 1});
}

TEST_CASE("non-responding machines") {
  const std::vector<Letter> in{1, 0};
  const auto spin = simulate(load("spin.otm"), in, 50);
  CHECK(spin.timed_out);
  CHECK(spin.outputs.empty());
  const auto once = simulate(load("answer_once.otm"), in, 50);
  CHECK(once.timed_out);
  CHECK(once.outputs == std::vector<Letter>{0});

  const auto u = unravel(load("spin.otm"));
  CHECK(u.successor(0, 0) == kFailState);
  CHECK(u.label(0, 0) == 0);
  CHECK(u.successor(kFailState, 1) == kFailState);
  CHECK(u.label(kFailState, 1) == 0);

  const auto a = unravel(load("answer_once.otm"));
  CHECK(a.successor(0, 1) == kFailState);
  CHECK(a.label(0, 1) == 1);
}

TEST_CASE("unraveled machine matches simulation") {
  std::mt19937_64 rng(9);
  for (const auto& name : kFixtures) {
    INFO(name);
    const auto m = load(name);
    const auto u = unravel(m);
    CHECK_NOTHROW(u.validate());
    CHECK(unravel(m) == u);
    for (int round = 0; round < 100; ++round) {
      std::vector<Letter> in(50);
      for (auto& x : in) x = rng() % 2;
      const auto sim = simulate(m, in, 10'000);
      // Walk the Mealy machine and stop at the first fail transition.
      std::vector<Letter> got;
      bool failed = false;
      mealy::StateId s = u.start;
      for (std::size_t t = 0; t <= in.size(); ++t) {
        const Letter x = t == 0 ? u.initial_input : in[t - 1];
        got.push_back(u.label(s, x));
        s = u.successor(s, x);
        if (s == kFailState) {
          failed = true;
          break;
        }
      }
      if (!failed) {
        CHECK_FALSE(sim.timed_out);
        CHECK(sim.outputs == got);
      } else {
        CHECK(sim.timed_out);
        // The fail transition carries the output written before stalling, if any.
        REQUIRE(sim.outputs.size() + 1 >= got.size());
        CHECK(std::equal(sim.outputs.begin(), sim.outputs.end(), got.begin()));
        if (sim.outputs.size() < got.size()) CHECK(got.back() == 0);
      }
    }
  }
}

TEST_CASE("verification against CTL") {
  CHECK(verify(load("copy.otm"), load_spec("copy_ag_g_iff_i.ctl")));
  CHECK_FALSE(verify(load("copy.otm"), load_spec("ag_g.ctl")));
  CHECK(verify(load("constant.otm"), load_spec("ag_g.ctl")));
  CHECK(verify(load("delay2.otm"), load_spec("delay2_spec.ctl")));
  CHECK_FALSE(verify(load("late_spin.otm"), load_spec("copy_ag_g_iff_i.ctl")));
  CHECK_FALSE(verify(load("answer_once.otm"), load_spec("ag_g.ctl")));
  auto other = load_spec("ag_g.ctl");
  other.outputs = {"h"};
  CHECK_THROWS_AS(verify(load("copy.otm"), other), ValidationError);
}

TEST_CASE("unravel caps") {
  CHECK_THROWS_AS(unravel(load("parity.otm"), {.max_steps = 1}), ResourceExhausted);
  CHECK_THROWS_AS(unravel(load("parity.otm"), {.max_states = 2}), ResourceExhausted);
}

TEST_CASE("each single-rule mutant is rejected") {
  const auto base = load("copy.otm");
  const auto w = state(base, "w"), r = state(base, "r");
  using Mutate = std::function<void(Machine&)>;
  auto at = [](Machine& m, std::uint32_t s, Letter in) -> Action& { return *m.delta[m.index(s, in, 0, 0)]; };
  const std::vector<std::pair<std::string, Mutate>> mutants{
      {"input read-only", [&](Machine& m) { at(m, w, 1).input = 0; }},
      {"output state moves the input head", [&](Machine& m) { at(m, w, 1).input_move = Move::Right; }},
      {"output state moves the output head left", [&](Machine& m) { at(m, w, 1).output_move = Move::Left; }},
      {"output written without advancing the head",
       [&](Machine& m) {
         at(m, w, 1).output_move = Move::Stay;
         at(m, w, 1).state = w;
       }},
      {"writing an output must enter an input state", [&](Machine& m) { at(m, w, 1).state = w; }},
      {"output state without writing must stay an output state",
       [&](Machine& m) {
         at(m, w, 0).output_move = Move::Stay;
         at(m, w, 0).output = 0;
       }},
      {"input state moves the input head left", [&](Machine& m) { at(m, r, 0).input_move = Move::Left; }},
      {"input state moves the output head", [&](Machine& m) { at(m, r, 0).output_move = Move::Right; }},
      {"input state writes the output tape", [&](Machine& m) { at(m, r, 0).output = 1; }},
      {"reading the next input must enter an output state", [&](Machine& m) { at(m, r, 0).state = r; }},
      {"input state without reading must stay an input state",
       [&](Machine& m) { at(m, r, 0).input_move = Move::Stay; }},
      {"missing transition", [&](Machine& m) { m.delta[m.index(r, 1, 0, 0)].reset(); }},
      {"start must be an output state", [&](Machine& m) { m.start = r; }},
  };
  for (const auto& [rule, mutate] : mutants) {
    INFO(rule);
    Machine m = base;
    mutate(m);
    const auto v = validate(m);
    CHECK(has_rule(v, rule));
    CHECK_THROWS_AS(unravel(m), ValidationError);
  }
}

TEST_CASE("malformed machine text") {
  CHECK_THROWS_AS(parse_machine("machine\n"), ParseError);
  try {
    parse_machine("otm\ninputs i\noutputs g\ninput_states r\noutput_states w\nstart w\nstorage _\n"
                  "w * * * -> r * - * - {g}\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 8);
  }
  CHECK_THROWS_AS(parse_machine("otm\ninputs i\noutputs g\noutput_states w\nstart q\nstorage _\n"), ValidationError);
  CHECK_THROWS_AS(parse_machine("otm\ninputs i\noutputs g\noutput_states w\nstart w\nstorage _\n"
                                "w {z} * * -> w * - * - * -\n"),
                  ParseError);
}
