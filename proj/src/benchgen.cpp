#include "succinct/benchgen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "succinct/error.hpp"

namespace succinct::bench {

using ctl::Formula;

namespace {

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

unsigned bits_for(std::uint64_t values) {
  unsigned n = 0;
  while ((std::uint64_t{1} << n) < values) ++n;
  return n;
}

std::uint32_t moved(std::uint32_t head, HeadMove m, std::uint32_t b) {
  if (m == HeadMove::Left && head > 0) return head - 1;
  if (m == HeadMove::Right && head + 1 < b) return head + 1;
  return head;
}

}  // namespace

Atm parse_atm(std::string_view text) {
  Atm atm;
  std::vector<std::string> universal, accepting;
  std::string start;
  bool magic = false, have_tape = false;
  struct Rule {
    std::size_t line;
    std::vector<std::string> toks;
  };
  std::vector<Rule> rules;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = words(line);
    if (toks.empty()) continue;
    if (!magic) {
      if (toks.size() != 1 || toks[0] != "atm") throw ParseError("expected 'atm' header", line_no, 1);
      magic = true;
      continue;
    }
    const auto& head = toks[0];
    const std::vector<std::string> rest(toks.begin() + 1, toks.end());
    if (head == "states") atm.states = rest;
    else if (head == "universal") universal = rest;
    else if (head == "accepting") accepting = rest;
    else if (head == "start" && rest.size() == 1) start = rest[0];
    else if (head == "tape" && rest.size() == 1) {
      try {
        atm.tape_length = static_cast<std::uint32_t>(std::stoul(rest[0]));
      } catch (const std::exception&) {
        throw ParseError("tape length must be a number", line_no, 1);
      }
      have_tape = true;
    } else {
      rules.push_back({line_no, std::move(toks)});
    }
  }
  if (!magic) throw ParseError("expected 'atm' header", 1, 1);
  if (atm.states.empty()) throw ValidationError("machine declares no states");
  if (!have_tape || atm.tape_length == 0 || atm.tape_length > 16)
    throw ValidationError("tape length must be between 1 and 16");
  auto id = [&](const std::string& name) -> std::optional<std::uint32_t> {
    auto it = std::find(atm.states.begin(), atm.states.end(), name);
    if (it == atm.states.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - atm.states.begin());
  };
  for (std::size_t i = 0; i < atm.states.size(); ++i)
    if (id(atm.states[i]) != i) throw ValidationError("duplicate state '" + atm.states[i] + "'");
  atm.quantifier.assign(atm.states.size(), Quantifier::Existential);
  atm.accepting.assign(atm.states.size(), 0);
  for (const auto& u : universal) {
    const auto q = id(u);
    if (!q) throw ValidationError("unknown state '" + u + "'");
    atm.quantifier[*q] = Quantifier::Universal;
  }
  for (const auto& a : accepting) {
    const auto q = id(a);
    if (!q) throw ValidationError("unknown state '" + a + "'");
    atm.accepting[*q] = 1;
  }
  const auto s = id(start);
  if (!s) throw ValidationError("missing or unknown start state '" + start + "'");
  atm.start = *s;
  atm.delta.resize(atm.states.size() * 2);
  for (std::uint32_t q = 0; q < atm.states.size(); ++q)
    for (int bit = 0; bit < 2; ++bit)
      atm.delta[q * 2 + bit] = {Alternative{q, bit != 0, HeadMove::Stay}, Alternative{q, bit != 0, HeadMove::Stay}};

  std::vector<std::uint8_t> seen(atm.delta.size(), 0);
  for (const auto& [no, t] : rules) {
    if (t.size() != 10 || t[2] != "->" || t[6] != "|")
      throw ParseError("expected 'state bit -> state bit move | state bit move'", no, 1);
    auto bit = [&](const std::string& s) {
      if (s != "0" && s != "1") throw ParseError("expected a bit, got '" + s + "'", no, 1);
      return s == "1";
    };
    auto state = [&](const std::string& s) {
      const auto q = id(s);
      if (!q) throw ParseError("unknown state '" + s + "'", no, 1);
      return *q;
    };
    auto move = [&](const std::string& s) {
      if (s == "<") return HeadMove::Left;
      if (s == "-") return HeadMove::Stay;
      if (s == ">") return HeadMove::Right;
      throw ParseError("expected a move '<', '-' or '>', got '" + s + "'", no, 1);
    };
    const auto q = state(t[0]);
    const auto r = bit(t[1]);
    const std::size_t slot = q * 2 + (r ? 1 : 0);
    if (seen[slot]) throw ParseError("duplicate transition for '" + t[0] + " " + t[1] + "'", no, 1);
    seen[slot] = 1;
    atm.delta[slot] = {Alternative{state(t[3]), bit(t[4]), move(t[5])},
                       Alternative{state(t[7]), bit(t[8]), move(t[9])}};
  }
  return atm;
}

std::uint64_t counter_max(std::uint64_t states, std::uint64_t tape_length) {
  return states * (std::uint64_t{1} << tape_length) * tape_length;
}

std::uint64_t counter_max(const Atm& atm) { return counter_max(atm.states.size(), atm.tape_length); }

bool atm_halts(const Atm& atm, const std::vector<bool>& tape) {
  if (tape.size() != atm.tape_length) throw ContractViolation("tape length does not match the machine");
  const std::uint64_t C = counter_max(atm);
  std::uint32_t bits = 0;
  for (std::size_t p = 0; p < tape.size(); ++p)
    if (tape[p]) bits |= 1U << p;
  struct Key {
    std::uint32_t state, tape, head;
    std::uint64_t step;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, bool> memo;
  auto halts = [&](auto&& self, Key k) -> bool {
    if (atm.accepting[k.state]) return true;
    if (k.step >= C) return false;
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    const bool read = (k.tape >> k.head) & 1U;
    const auto& alts = atm.delta[k.state * 2 + (read ? 1 : 0)];
    bool result = atm.quantifier[k.state] == Quantifier::Universal;
    for (const auto& a : alts) {
      std::uint32_t t = a.write ? k.tape | (1U << k.head) : k.tape & ~(1U << k.head);
      const bool r = self(self, Key{a.state, t, moved(k.head, a.move, atm.tape_length), k.step + 1});
      result = atm.quantifier[k.state] == Quantifier::Universal ? result && r : result || r;
    }
    memo.emplace(k, result);
    return result;
  };
  return halts(halts, Key{atm.start, bits, 0, 0});
}

Encoding encoding_of(const Atm& atm) {
  Encoding e;
  for (std::uint32_t p = 1; p <= atm.tape_length; ++p) {
    e.tape_inputs.push_back("x" + std::to_string(p));
    e.tape.push_back("t" + std::to_string(p));
    e.head.push_back("p" + std::to_string(p));
  }
  for (unsigned i = 0; i < bits_for(atm.states.size()); ++i) e.state_bits.push_back("s" + std::to_string(i));
  for (unsigned i = 0; i < bits_for(counter_max(atm) + 1); ++i) e.counter_bits.push_back("c" + std::to_string(i));
  return e;
}

ctl::Spec gen_phi_b(const Atm& atm) {
  const auto e = encoding_of(atm);
  const std::uint32_t b = atm.tape_length;
  const std::uint64_t C = counter_max(atm);

  auto atom = [](const std::string& n) { return Formula::atom(n); };
  auto lit = [&](const std::string& n, bool v) { return v ? atom(n) : Formula::neg(atom(n)); };
  auto number = [&](const std::vector<std::string>& bits, std::uint64_t v) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < bits.size(); ++i) parts.push_back(lit(bits[i], (v >> i) & 1U));
    return Formula::all(parts);
  };
  auto state_is = [&](std::uint32_t q) { return number(e.state_bits, q); };
  auto head_exactly = [&](std::uint32_t p) {
    std::vector<Formula> parts;
    for (std::uint32_t i = 0; i < b; ++i) parts.push_back(lit(e.head[i], i == p));
    return Formula::all(parts);
  };
  const Formula alt = atom(e.alt);
  const Formula saturated = number(e.counter_bits, C);

  // Initial configuration at the first node below the root.
  std::vector<Formula> init{atom(e.run), head_exactly(0), state_is(atm.start), number(e.counter_bits, 0)};
  for (std::uint32_t p = 0; p < b; ++p) init.push_back(Formula::iff(atom(e.tape[p]), atom(e.tape_inputs[p])));

  std::vector<Formula> step;
  for (std::uint32_t q = 0; q < atm.states.size(); ++q) {
    for (std::uint32_t p = 0; p < b; ++p) {
      for (int r = 0; r < 2; ++r) {
        const auto& alts = atm.delta[q * 2 + r];
        auto target = [&](const Alternative& a) {
          return Formula::all({state_is(a.state), lit(e.tape[p], a.write), head_exactly(moved(p, a.move, b))});
        };
        const Formula guard = Formula::all({state_is(q), atom(e.head[p]), lit(e.tape[p], r != 0)});
        step.push_back(Formula::implies(
            guard, Formula::ax(Formula::conj(Formula::implies(Formula::neg(alt), target(alts[0])),
                                             Formula::implies(alt, target(alts[1]))))));
      }
    }
  }
  // Cells away from the head keep their contents.
  for (std::uint32_t p = 0; p < b; ++p)
    for (bool v : {false, true})
      step.push_back(Formula::implies(Formula::conj(Formula::neg(atom(e.head[p])), lit(e.tape[p], v)),
                                      Formula::ax(lit(e.tape[p], v))));
  // Ripple-carry increment, saturating at C.
  step.push_back(Formula::implies(saturated, Formula::ax(saturated)));
  for (std::size_t i = 0; i < e.counter_bits.size(); ++i) {
    std::vector<Formula> lower;
    for (std::size_t j = 0; j < i; ++j) lower.push_back(atom(e.counter_bits[j]));
    const Formula carry = Formula::all(lower);
    const Formula c = atom(e.counter_bits[i]);
    const Formula flips = Formula::disj(Formula::conj(c, Formula::neg(carry)), Formula::conj(Formula::neg(c), carry));
    step.push_back(Formula::implies(Formula::conj(Formula::neg(saturated), flips), Formula::ax(c)));
    step.push_back(
        Formula::implies(Formula::conj(Formula::neg(saturated), Formula::neg(flips)), Formula::ax(Formula::neg(c))));
  }

  std::vector<Formula> halt;
  const Formula h = atom(e.halts);
  for (std::uint32_t q = 0; q < atm.states.size(); ++q) {
    if (atm.accepting[q]) {
      halt.push_back(Formula::implies(state_is(q), h));
      continue;
    }
    halt.push_back(Formula::implies(Formula::conj(state_is(q), saturated), Formula::neg(h)));
    const Formula next = atm.quantifier[q] == Quantifier::Universal ? Formula::ax(h) : Formula::ex(h);
    halt.push_back(Formula::implies(Formula::conj(state_is(q), Formula::neg(saturated)), Formula::iff(h, next)));
  }

  const Formula run = atom(e.run);
  ctl::Spec spec;
  spec.inputs = e.tape_inputs;
  spec.inputs.push_back(e.alt);
  spec.outputs = e.tape;
  spec.outputs.insert(spec.outputs.end(), e.head.begin(), e.head.end());
  spec.outputs.insert(spec.outputs.end(), e.state_bits.begin(), e.state_bits.end());
  spec.outputs.insert(spec.outputs.end(), e.counter_bits.begin(), e.counter_bits.end());
  spec.outputs.push_back(e.halts);
  spec.outputs.push_back(e.run);
  spec.formula = Formula::all({
      Formula::neg(run),
      Formula::ax(Formula::ag(run)),
      Formula::ax(Formula::all(init)),
      Formula::ag(Formula::implies(run, Formula::all(step))),
      Formula::ag(Formula::implies(run, Formula::all(halt))),
  });
  ctl::validate(spec);
  return spec;
}

}  // namespace succinct::bench
