#include <cstdio>
#include <random>
#include <thread>

#include "doctest.h"
#include "succinct/audit.hpp"
#include "succinct/automata.hpp"
#include "succinct/error.hpp"
#include "succinct/executor.hpp"
#include "support.hpp"

using namespace succinct;
using namespace succinct::exec;

namespace {

std::unique_ptr<Session> session(const std::string& text, Mode mode = Mode::Enumerate) {
  synth::SolveOptions o;
  o.mode = mode;
  o.k_max = 8;
  return Session::create(ctl::parse_spec(text), o);
}

}  // namespace

TEST_CASE("constant grant") {
  auto s = session("inputs i; outputs g; AG g");
  CHECK(s->k() == 0);
  CHECK(s->initial_output() == 1);
  const auto u = automata::to_universal(automata::ctl_to_alternating(ctl::parse_spec("inputs i; outputs g; AG g")));
  CHECK(s->current() == synth::initial_state(*u));
  for (Letter in : {0, 1, 1, 0}) CHECK(s->step(in) == 1);
  CHECK(s->depth() == 4);
}

TEST_CASE("trivial spec outputs the empty letter") {
  auto s = session("inputs i; outputs g, h; true");
  CHECK(s->initial_output() == 0);
  CHECK(s->step(1) == 0);
  CHECK(s->current().empty());
}

TEST_CASE("contradiction cannot start a session") {
  CHECK_THROWS_AS(session("inputs i; outputs g; AG g & EF !g"), Unrealizable);
}

TEST_CASE("undo restores the previous state") {
  auto s = session("inputs r; outputs g; AG (r -> AX g) & AG (!r -> AX !g)");
  const auto c0 = s->current();
  const auto d0 = s->digest();
  CHECK_THROWS_AS(s->undo(), ContractViolation);
  // The output answers the previous input.
  const auto o1 = s->step(1);
  CHECK(o1 == 0);
  const auto c1 = s->current();
  CHECK(s->step(0) == 1);
  s->undo();
  CHECK(s->current() == c1);
  s->undo();
  CHECK(s->current() == c0);
  CHECK(s->digest() == d0);
  CHECK(s->step(1) == o1);
  CHECK_THROWS_AS(s->step(2), InvalidLetter);
}

TEST_CASE("what-if queries") {
  auto s = session("inputs i; outputs g; AG g");
  const auto d = s->digest();
  CHECK(s->what_if("") == Verdict::Winning);
  CHECK(s->what_if("0") == Verdict::Losing);
  CHECK(s->what_if("1") == Verdict::Winning);
  CHECK(s->what_if("1", 1) == Verdict::Winning);
  CHECK(s->what_if("2") == Verdict::Invalid);
  CHECK(s->what_if(std::string(200, '1')) == Verdict::Invalid);
  CHECK(s->what_if(std::map<std::string, bool>{{"g", false}}) == Verdict::Losing);
  CHECK(s->what_if(std::map<std::string, bool>{{"g", true}}) == Verdict::Winning);
  CHECK(s->what_if(std::map<std::string, bool>{{"nope", true}}) == Verdict::Invalid);
  CHECK(s->digest() == d);
  CHECK(s->depth() == 0);
}

TEST_CASE("what-if on a full letter checks validity") {
  auto s = session("inputs i; outputs g; AG (i -> AX g)");
  const auto& layout = s->chosen();
  (void)layout;
  // Claimed input bits that contradict the next node make the letter invalid.
  auto u = automata::to_universal(automata::ctl_to_alternating(ctl::parse_spec("inputs i; outputs g; AG (i -> AX g)")));
  const auto width = u->layout().width();
  std::string ok(width, '0'), bad(width, '0');
  ok[0] = '1';
  ok[1] = '1';  // next input {i} claimed
  bad[0] = '1';
  CHECK(s->what_if(ok, 1) == Verdict::Winning);
  CHECK(s->what_if(bad, 1) == Verdict::Invalid);
}

TEST_CASE("executor matches the extracted controller") {
  std::mt19937_64 rng(3);
  for (int i = 1; i <= 24; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "specs/s%02d.ctl", i);
    INFO(name);
    const auto spec = ctl::parse_spec(testing::read_file(testing::fixture(name)));
    auto u = automata::to_universal(automata::ctl_to_alternating(spec));
    auto r = synth::solve(u, {.k_max = 8});
    REQUIRE(r.realizable);
    const auto machine = mealy::restrict_outputs(synth::extract_mealy(r.strategy));
    for (int round = 0; round < 20; ++round) {
      std::vector<Letter> inputs(20);
      for (auto& in : inputs) in = rng() % alphabet_size(spec.inputs.size());
      const auto trace = mealy::run_trace(machine, std::span<const Letter>(inputs));
      Session a(r.strategy);
      auto b_strategy = r.strategy;
      b_strategy.mode = Mode::BinarySearch;
      Session b(b_strategy);
      CHECK(a.initial_output() == trace[0].output);
      CHECK(b.initial_output() == trace[0].output);
      for (std::size_t t = 0; t < inputs.size(); ++t) {
        const auto oa = a.step(inputs[t]);
        CHECK(oa == b.step(inputs[t]));
        CHECK(oa == trace[t + 1].output);
      }
    }
  }
  CHECK(audit::violations() == 0);
}

TEST_CASE("what-if is read-only under concurrent use") {
  auto s = session("inputs req; outputs grant; AG (req -> AF grant) & AG EF !grant");
  std::atomic<bool> stop{false};
  std::atomic<int> queries{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t)
    readers.emplace_back([&] {
      while (!stop) {
        (void)s->what_if("1");
        (void)s->digest();
        ++queries;
      }
    });
  std::vector<Letter> outs;
  for (int i = 0; i < 50; ++i) outs.push_back(s->step(i % 3 == 0));
  stop = true;
  for (auto& r : readers) r.join();
  CHECK(queries > 0);

  auto fresh = session("inputs req; outputs grant; AG (req -> AF grant) & AG EF !grant");
  for (int i = 0; i < 50; ++i) CHECK(fresh->step(i % 3 == 0) == outs[i]);
}
