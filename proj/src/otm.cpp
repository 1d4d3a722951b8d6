#include "succinct/otm.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "succinct/audit.hpp"
#include "succinct/error.hpp"
#include "succinct/model_check.hpp"

namespace succinct::otm {

std::size_t Machine::index(std::uint32_t s, Letter in, std::uint32_t t, Letter out) const {
  const std::size_t ni = alphabet_size(inputs.size()), no = alphabet_size(outputs.size());
  return ((static_cast<std::size_t>(s) * ni + in) * symbols.size() + t) * no + out;
}

namespace {

constexpr std::size_t kMaxTable = std::size_t{1} << 24;

// Whitespace separated tokens; a `{...}` group is one token.
std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t end = i;
    if (line[i] == '{') {
      end = line.find('}', i);
      if (end == std::string_view::npos) throw ParseError("unterminated '{'", 0, i + 1);
      ++end;
    } else {
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    }
    out.emplace_back(line.substr(i, end - i));
    i = end;
  }
  return out;
}

std::vector<std::string> names(const std::vector<std::string>& toks, std::size_t from) {
  std::string joined;
  for (std::size_t i = from; i < toks.size(); ++i) joined += toks[i] + " ";
  std::vector<std::string> out;
  std::string cur;
  for (char c : joined) {
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

Move parse_move(const std::string& tok) {
  if (tok == "<") return Move::Left;
  if (tok == "-") return Move::Stay;
  if (tok == ">") return Move::Right;
  throw ParseError("expected a move '<', '-' or '>', got '" + tok + "'", 0, 0);
}


}  // namespace

Machine parse_machine(std::string_view text) {
  Machine m;
  m.symbols = {"_"};
  bool magic = false;
  std::vector<std::string> in_states, out_states;
  std::string start_name;
  std::vector<std::string> storage_names;
  bool have_init = false;
  std::string init_text;
  struct Line {
    std::size_t no;
    std::vector<std::string> toks;
  };
  std::vector<Line> transitions;

  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> toks;
    try {
      toks = tokenize(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, e.column());
    }
    if (toks.empty()) continue;
    if (!magic) {
      if (toks.size() != 1 || toks[0] != "otm") throw ParseError("expected 'otm' header", line_no, 1);
      magic = true;
      continue;
    }
    const auto& head = toks[0];
    if (head == "inputs") m.inputs = names(toks, 1);
    else if (head == "outputs") m.outputs = names(toks, 1);
    else if (head == "symbols") {
      for (auto& s : names(toks, 1))
        if (s != "_") m.symbols.push_back(s);
    } else if (head == "input_states") in_states = names(toks, 1);
    else if (head == "output_states") out_states = names(toks, 1);
    else if (head == "start") {
      if (toks.size() != 2) throw ParseError("expected 'start <state>'", line_no, 1);
      start_name = toks[1];
    } else if (head == "storage") storage_names.assign(toks.begin() + 1, toks.end());
    else if (head == "init") {
      have_init = true;
      init_text.clear();
      for (std::size_t i = 1; i < toks.size(); ++i) init_text += toks[i];
    } else {
      transitions.push_back({line_no, std::move(toks)});
    }
  }
  if (!magic) throw ParseError("expected 'otm' header", 1, 1);

  for (const auto& s : out_states) {
    m.states.push_back(s);
    m.output_state.push_back(1);
  }
  for (const auto& s : in_states) {
    m.states.push_back(s);
    m.output_state.push_back(0);
  }
  auto find = [](const std::vector<std::string>& list, const std::string& name) -> std::optional<std::uint32_t> {
    auto it = std::find(list.begin(), list.end(), name);
    if (it == list.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - list.begin());
  };
  for (std::size_t i = 0; i < m.states.size(); ++i)
    if (find(m.states, m.states[i]) != i) throw ValidationError("duplicate state '" + m.states[i] + "'");
  for (std::size_t i = 0; i < m.symbols.size(); ++i)
    if (find(m.symbols, m.symbols[i]) != i) throw ValidationError("duplicate storage symbol '" + m.symbols[i] + "'");
  if (m.states.empty()) throw ValidationError("machine declares no states");
  if (m.inputs.size() > 12 || m.outputs.size() > 12) throw ValidationError("too many propositions for a machine");
  const auto start = find(m.states, start_name);
  if (!start) throw ValidationError("missing or unknown start state '" + start_name + "'");
  m.start = *start;
  if (storage_names.empty()) throw ValidationError("storage word must have at least one cell");
  for (const auto& s : storage_names) {
    const auto id = find(m.symbols, s);
    if (!id) throw ValidationError("unknown storage symbol '" + s + "'");
    m.storage.push_back(*id);
  }
  if (have_init) m.initial_input = parse_letter(init_text, m.inputs);

  const std::size_t ni = alphabet_size(m.inputs.size()), no = alphabet_size(m.outputs.size());
  const double size = static_cast<double>(m.states.size()) * ni * m.symbols.size() * no;
  if (size > kMaxTable) throw ResourceExhausted("transition table too large");
  m.delta.assign(static_cast<std::size_t>(size), std::nullopt);

  for (const auto& [no_line, toks] : transitions) {
    try {
      // state input storage output -> state' input' move storage' move output' move
      if (toks.size() != 12 || toks[4] != "->")
        throw ParseError("expected 'state input storage output -> state input move storage move output move'", 0, 0);
      const auto s = find(m.states, toks[0]);
      if (!s) throw ParseError("unknown state '" + toks[0] + "'", 0, 0);
      const auto s2 = find(m.states, toks[5]);
      if (!s2) throw ParseError("unknown state '" + toks[5] + "'", 0, 0);
      auto symbol = [&](const std::string& tok) {
        const auto id = find(m.symbols, tok);
        if (!id) throw ParseError("unknown storage symbol '" + tok + "'", 0, 0);
        return *id;
      };
      const bool any_in = toks[1] == "*", any_t = toks[2] == "*", any_out = toks[3] == "*";
      const Letter pin = any_in ? 0 : parse_letter(toks[1], m.inputs);
      const std::uint32_t pt = any_t ? 0 : symbol(toks[2]);
      const Letter pout = any_out ? 0 : parse_letter(toks[3], m.outputs);
      const bool copy_in = toks[6] == "*", copy_t = toks[8] == "*", copy_out = toks[10] == "*";
      Action base;
      base.state = *s2;
      base.input = copy_in ? 0 : parse_letter(toks[6], m.inputs);
      base.input_move = parse_move(toks[7]);
      base.storage = copy_t ? 0 : symbol(toks[8]);
      base.storage_move = parse_move(toks[9]);
      base.output = copy_out ? 0 : parse_letter(toks[10], m.outputs);
      base.output_move = parse_move(toks[11]);
      for (Letter in = 0; in < ni; ++in) {
        if (!any_in && in != pin) continue;
        for (std::uint32_t t = 0; t < m.symbols.size(); ++t) {
          if (!any_t && t != pt) continue;
          for (Letter out = 0; out < no; ++out) {
            if (!any_out && out != pout) continue;
            auto& slot = m.delta[m.index(*s, in, t, out)];
            if (slot) continue;
            Action a = base;
            if (copy_in) a.input = in;
            if (copy_t) a.storage = t;
            if (copy_out) a.output = out;
            slot = a;
          }
        }
      }
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), no_line, 1);
    }
  }
  return m;
}

namespace {

std::string entry_name(const Machine& m, std::uint32_t s, Letter in, std::uint32_t t, Letter out) {
  return m.states[s] + " " + format_letter(in, m.inputs) + " " + m.symbols[t] + " " + format_letter(out, m.outputs);
}

}  // namespace

std::vector<Violation> validate(const Machine& m) {
  std::vector<Violation> v;
  if (!m.output_state[m.start]) v.push_back({m.states[m.start], "start must be an output state"});
  const std::size_t ni = alphabet_size(m.inputs.size()), no = alphabet_size(m.outputs.size());
  for (std::uint32_t s = 0; s < m.states.size(); ++s) {
    for (Letter in = 0; in < ni; ++in) {
      for (std::uint32_t t = 0; t < m.symbols.size(); ++t) {
        for (Letter out = 0; out < no; ++out) {
          const auto& a = m.action(s, in, t, out);
          auto bad = [&](const char* rule) { v.push_back({entry_name(m, s, in, t, out), rule}); };
          if (!a) {
            bad("missing transition");
            continue;
          }
          if (a->input != in) bad("input read-only");
          const bool next_out = m.output_state[a->state] != 0;
          if (!m.output_state[s]) {
            if (a->input_move == Move::Left) bad("input state moves the input head left");
            if (a->output_move != Move::Stay) bad("input state moves the output head");
            if (a->output != out) bad("input state writes the output tape");
            if (a->input_move == Move::Right && !next_out) bad("reading the next input must enter an output state");
            if (a->input_move == Move::Stay && next_out) bad("input state without reading must stay an input state");
          } else {
            if (a->input_move != Move::Stay) bad("output state moves the input head");
            if (a->output_move == Move::Left) bad("output state moves the output head left");
            if (a->output_move == Move::Stay && a->output != out) bad("output written without advancing the head");
            if (a->output_move == Move::Right && next_out) bad("writing an output must enter an input state");
            if (a->output_move == Move::Stay && !next_out) bad("output state without writing must stay an output state");
          }
        }
      }
    }
  }
  return v;
}

namespace {

struct Config {
  std::uint32_t state = 0;
  Letter input = 0;
  std::uint32_t head = 0;  // storage cell, 0-based
  Letter last = 0;         // last output written
  std::vector<std::uint32_t> tape;

  bool operator==(const Config&) const = default;
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const {
    std::uint64_t h = c.state * 0x9E3779B97F4A7C15ULL;
    auto mix = [&](std::uint64_t x) { h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2); };
    mix(c.input);
    mix(c.head);
    mix(c.last);
    for (auto t : c.tape) mix(t);
    return static_cast<std::size_t>(h);
  }
};

// Writes, moves the storage head and changes state. Input and output head
// positions are tracked by the callers.
void apply(const Machine& m, Config& c, const Action& a) {
  c.tape[c.head] = a.storage;
  if (a.storage_move == Move::Left && c.head > 0) --c.head;
  if (a.storage_move == Move::Right && c.head + 1 < m.storage.size()) ++c.head;
  if (a.output_move == Move::Right) c.last = a.output;
  c.state = a.state;
}

// The output head always rests on a blank cell in a valid machine.
const Action& action_at(const Machine& m, const Config& c) {
  const auto& a = m.action(c.state, c.input, c.tape[c.head], 0);
  if (!a) throw ValidationError("missing transition for " + entry_name(m, c.state, c.input, c.tape[c.head], 0));
  return *a;
}

void require_valid(const Machine& m) {
  const auto v = validate(m);
  if (!v.empty()) throw ValidationError("invalid machine: " + v.front().entry + ": " + v.front().rule);
}

}  // namespace

Simulation simulate(const Machine& m, std::span<const Letter> inputs, std::size_t step_budget) {
  require_valid(m);
  Simulation r;
  Config c{m.start, m.initial_input, 0, 0, m.storage};
  std::size_t next = 0, steps = 0;
  while (r.outputs.size() < inputs.size() + 1) {
    const Action& a = action_at(m, c);
    apply(m, c, a);
    ++steps;
    if (a.input_move == Move::Right) c.input = inputs[next++];
    if (a.output_move == Move::Right) {
      r.outputs.push_back(a.output);
      r.steps.push_back(steps);
      steps = 0;
    } else if (steps >= step_budget) {
      r.timed_out = true;
      break;
    }
  }
  return r;
}

mealy::MealyMachine unravel(const Machine& m, const UnravelOptions& options) {
  require_valid(m);
  const std::size_t ni = alphabet_size(m.inputs.size());
  // Keys are configurations about to read the next input.
  std::unordered_map<Config, mealy::StateId, ConfigHash> ids;
  std::vector<Config> keys{Config{}, Config{}};
  std::vector<std::pair<mealy::StateId, Letter>> rows;

  auto intern = [&](const Config& c) {
    auto [it, fresh] = ids.emplace(c, static_cast<mealy::StateId>(keys.size()));
    if (fresh) {
      if (keys.size() >= options.max_states)
        throw ResourceExhausted("unraveling exceeded " + std::to_string(options.max_states) + " states");
      keys.push_back(c);
    }
    return it->second;
  };

  // Runs until the machine asks for the next input; a repeated configuration
  // before that means it never will.
  auto respond = [&](Config c) -> std::pair<mealy::StateId, Letter> {
    std::optional<Letter> written;
    std::unordered_set<Config, ConfigHash> seen;
    for (std::size_t steps = 0;; ++steps) {
      const Action& a = action_at(m, c);
      if (a.input_move == Move::Right) {
        audit::require(written.has_value(), "machine read a new input before answering the last one");
        return {intern(c), *written};
      }
      if (!seen.insert(c).second) return {kFailState, written.value_or(0)};
      if (steps >= options.max_steps)
        throw ResourceExhausted("a response exceeded " + std::to_string(options.max_steps) + " steps");
      apply(m, c, a);
      if (a.output_move == Move::Right) written = a.output;
    }
  };

  for (std::size_t id = 0; id < keys.size(); ++id) {
    for (Letter in = 0; in < ni; ++in) {
      if (id == kFailState) {
        rows.emplace_back(kFailState, 0);
      } else if (id == 0) {
        rows.push_back(respond(Config{m.start, in, 0, 0, m.storage}));
      } else {
        Config c = keys[id];
        apply(m, c, action_at(m, c));
        c.input = in;
        rows.push_back(respond(std::move(c)));
      }
    }
  }
  auto out = mealy::MealyMachine::with_states(m.inputs, m.outputs, keys.size());
  out.start = 0;
  out.initial_input = m.initial_input;
  for (mealy::StateId s = 0; s < keys.size(); ++s)
    for (Letter in = 0; in < ni; ++in) out.set(s, in, rows[s * ni + in].first, rows[s * ni + in].second);
  return out;
}

bool verify(const Machine& m, const ctl::Spec& spec, const UnravelOptions& options) {
  if (spec.inputs != m.inputs || spec.outputs != m.outputs)
    throw ValidationError("machine and spec declare different propositions");
  if (spec.initial_input != m.initial_input)
    throw ValidationError("machine and spec disagree on the initial input");
  return ctl::check(unravel(m, options), spec.formula);
}

}  // namespace succinct::otm
