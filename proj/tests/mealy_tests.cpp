#include <random>

#include "doctest.h"
#include "succinct/error.hpp"
#include "succinct/mealy.hpp"
#include "support.hpp"

using namespace succinct;
using namespace succinct::mealy;

namespace {

std::vector<Letter> outputs_of(const std::vector<TraceLetter<Letter>>& w) {
  std::vector<Letter> out;
  for (auto& l : w) out.push_back(l.output);
  return out;
}

}  // namespace

TEST_CASE("constant machine trace") {
  auto m = testing::constant_machine({"i"}, {"g"}, 1, 1);
  std::vector<Letter> in{1, 0};
  auto w = run_trace(m, std::span<const Letter>(in));
  REQUIRE(w.size() == 3);
  CHECK(w[0] == TraceLetter<Letter>{1, 1});
  CHECK(w[1] == TraceLetter<Letter>{1, 1});
  CHECK(w[2] == TraceLetter<Letter>{0, 1});
  CHECK(run_trace(m, std::span<const Letter>()).size() == 1);
}

TEST_CASE("echo machine trace matches hand table") {
  // step  state  input  output  next
  //  0     0      {}     {}      0     (root, initial input)
  //  1     0      {i}    {}      1
  //  2     1      {}     {g}     0
  auto m = testing::echo_machine();
  std::vector<Letter> in{1, 0};
  auto w = run_trace(m, std::span<const Letter>(in));
  CHECK(outputs_of(w) == std::vector<Letter>{0, 0, 1});
  CHECK(w[1].input == 1);
  CHECK(w[2].input == 0);
}

TEST_CASE("trace prefix consistency") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto m = testing::random_machine(rng, 1 + rng() % 4, {"a", "b"}, {"x"});
    std::vector<Letter> u, v;
    for (int i = 0; i < 6; ++i) u.push_back(rng() % 4);
    for (int i = 0; i < 4; ++i) v.push_back(rng() % 4);
    auto uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    auto a = run_trace(m, std::span<const Letter>(u));
    auto b = run_trace(m, std::span<const Letter>(uv));
    REQUIRE(b.size() == a.size() + v.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("restrict outputs projects annotation away") {
  auto m = AnnotatedMachine::with_states({"i"}, {"g"}, 1);
  m.set(0, 0, 0, AnnotatedOutput{1, 0, {2, 1}});
  m.set(0, 1, 0, AnnotatedOutput{1, 1, {0}});
  auto r = restrict_outputs(m);
  CHECK(r.labels == std::vector<Letter>{1, 1});
  CHECK(r.next == m.next);

  // A machine already over plain outputs, lifted and projected, is unchanged.
  auto c = testing::echo_machine();
  auto lifted = AnnotatedMachine::with_states(c.inputs, c.outputs, c.num_states);
  for (StateId s = 0; s < c.num_states; ++s)
    for (Letter a = 0; a < 2; ++a) lifted.set(s, a, c.successor(s, a), AnnotatedOutput{c.label(s, a), 0, {}});
  CHECK(restrict_outputs(lifted) == c);
}

TEST_CASE("kripke quotient") {
  auto c = testing::constant_machine({"i"}, {"g"}, 1);
  auto k = to_kripke(c);
  CHECK(k.size() <= 2);
  for (std::uint32_t n = 0; n < k.size(); ++n) {
    CHECK(k.output[n] == c.label(k.state[n], k.input[n]));
  }

  auto e = testing::echo_machine();
  auto q = to_kripke(e);
  CHECK(q.size() <= e.num_states * e.alphabet());
  CHECK(q.succ.size() == q.size() * q.alphabet);
  CHECK(q.state[0] == e.start);
  CHECK(q.input[0] == e.initial_input);
}

TEST_CASE("kripke quotient is bisimilar to the unrolled tree") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto m = t == 0 ? testing::echo_machine() : testing::random_machine(rng, 1 + rng() % 4, {"i"}, {"g", "h"});
    auto k = to_kripke(m);
    // Walk every input word of length ≤ 4 in the machine and the quotient.
    std::function<void(StateId, Letter, std::uint32_t, int)> walk = [&](StateId s, Letter in, std::uint32_t node,
                                                                        int depth) {
      CHECK(k.input[node] == in);
      CHECK(k.output[node] == m.label(s, in));
      if (depth == 4) return;
      const auto t2 = m.successor(s, in);
      for (Letter a = 0; a < m.alphabet(); ++a) walk(t2, a, k.successor(node, a), depth + 1);
    };
    walk(m.start, m.initial_input, 0, 0);
  }
}

TEST_CASE("serialize round trip") {
  auto c = testing::constant_machine({"i"}, {"g"}, 1);
  CHECK(deserialize(serialize(c)) == c);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    auto m = testing::random_machine(rng, 1 + rng() % 5, {"a", "b"}, {"x", "y"});
    CHECK(deserialize(serialize(m)) == m);
  }
  auto e = testing::echo_machine();
  CHECK(to_dot(e).find("s0 -> s1 [label=\"{i} / {}\"]") != std::string::npos);
}

TEST_CASE("malformed machine files") {
  const std::string good =
      "mealy\ninputs i\noutputs g\ninit {}\nstates 1\nstart 0\n0 {} -> 0 / {g}\n0 {i} -> 0 / {}\n";
  CHECK_NOTHROW(deserialize(good));
  auto bad = good;
  bad.replace(bad.find("0 {i} -> 0"), 10, "0 {i} -> 3");
  CHECK_THROWS_AS(deserialize(bad), ParseError);
  CHECK_THROWS_AS(deserialize("mealy\ninputs i\noutputs g\nstates 1\n0 {} -> 0 / {g}\n"), ParseError);
  CHECK_THROWS_AS(deserialize("machine\n"), ParseError);
  CHECK_THROWS_AS(deserialize("mealy\ninputs i\noutputs g\nstates 1\n0 {j} -> 0 / {g}\n"), ParseError);
  auto m = testing::constant_machine({"i"}, {"g"}, 1);
  m.next[1] = 7;
  CHECK_THROWS_AS(m.validate(), ValidationError);
}
