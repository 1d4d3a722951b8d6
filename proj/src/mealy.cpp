#include "succinct/mealy.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace succinct::mealy {

MealyMachine restrict_outputs(const AnnotatedMachine& m) {
  MealyMachine r;
  r.inputs = m.inputs;
  r.outputs = m.outputs;
  r.num_states = m.num_states;
  r.next = m.next;
  r.start = m.start;
  r.initial_input = m.initial_input;
  r.labels.reserve(m.labels.size());
  for (const auto& a : m.labels) r.labels.push_back(a.output);
  return r;
}

KripkeQuotient to_kripke(const MealyMachine& m) {
  KripkeQuotient k;
  k.alphabet = m.alphabet();
  std::unordered_map<std::uint64_t, std::uint32_t> id;
  auto key = [&](StateId s, Letter in) { return (std::uint64_t{s} << 32) | in; };
  auto intern = [&](StateId s, Letter in) {
    auto [it, fresh] = id.emplace(key(s, in), static_cast<std::uint32_t>(k.state.size()));
    if (fresh) {
      k.state.push_back(s);
      k.input.push_back(in);
      k.output.push_back(m.label(s, in));
    }
    return it->second;
  };
  intern(m.start, m.initial_input);
  for (std::uint32_t n = 0; n < k.state.size(); ++n) {
    const StateId t = m.successor(k.state[n], k.input[n]);
    for (Letter a = 0; a < k.alphabet; ++a) {
      const auto target = intern(t, a);
      k.succ.push_back(target);
    }
  }
  return k;
}

std::string serialize(const MealyMachine& m) {
  m.validate();
  std::ostringstream out;
  auto list = [&](const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
  };
  out << "mealy\ninputs";
  if (!m.inputs.empty()) out << ' ';
  list(m.inputs);
  out << "\noutputs";
  if (!m.outputs.empty()) out << ' ';
  list(m.outputs);
  out << "\ninit " << format_letter(m.initial_input, m.inputs) << "\n";
  out << "states " << m.num_states << "\nstart " << m.start << "\n";
  for (StateId s = 0; s < m.num_states; ++s)
    for (Letter a = 0; a < m.alphabet(); ++a)
      out << s << ' ' << format_letter(a, m.inputs) << " -> " << m.successor(s, a) << " / "
          << format_letter(m.label(s, a), m.outputs) << "\n";
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_names(std::string_view s) {
  std::vector<std::string> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    out.emplace_back(trim(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

std::size_t to_number(std::string_view s, std::size_t line) {
  s = trim(s);
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError("expected a number, found '" + std::string(s) + "'", line, 1);
  return v;
}

}  // namespace

MealyMachine deserialize(std::string_view text) {
  MealyMachine m;
  std::vector<bool> covered;
  bool header_done = false, saw_magic = false, saw_states = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!saw_magic) {
      if (line != "mealy") throw ParseError("expected 'mealy' header", line_no, 1);
      saw_magic = true;
      continue;
    }
    auto starts = [&](std::string_view kw) {
      return line.substr(0, kw.size()) == kw &&
             (line.size() == kw.size() || std::isspace(static_cast<unsigned char>(line[kw.size()])));
    };
    try {
      if (!header_done && starts("inputs")) {
        m.inputs = split_names(line.substr(6));
      } else if (!header_done && starts("outputs")) {
        m.outputs = split_names(line.substr(7));
      } else if (!header_done && starts("init")) {
        m.initial_input = parse_letter(line.substr(4), m.inputs);
      } else if (!header_done && starts("states")) {
        m.num_states = to_number(line.substr(6), line_no);
        if (m.num_states == 0) throw ParseError("machine needs at least one state", line_no, 1);
        if (m.inputs.size() > kMaxPropositions || m.outputs.size() > kMaxPropositions)
          throw ParseError("too many propositions", line_no, 1);
        m.next.assign(m.num_states * m.alphabet(), 0);
        m.labels.assign(m.next.size(), 0);
        covered.assign(m.next.size(), false);
        saw_states = true;
      } else if (!header_done && starts("start")) {
        m.start = static_cast<StateId>(to_number(line.substr(5), line_no));
      } else {
        if (!saw_states) throw ParseError("transition before 'states' declaration", line_no, 1);
        header_done = true;
        const auto arrow = line.find("->");
        const auto slash = line.find('/', arrow == std::string_view::npos ? 0 : arrow);
        if (arrow == std::string_view::npos || slash == std::string_view::npos)
          throw ParseError("expected '<state> <letter> -> <state> / <letter>'", line_no, 1);
        auto lhs = trim(line.substr(0, arrow));
        const auto space = lhs.find_first_of(" \t");
        if (space == std::string_view::npos) throw ParseError("missing input letter", line_no, 1);
        const auto s = to_number(lhs.substr(0, space), line_no);
        const Letter in = parse_letter(lhs.substr(space), m.inputs);
        const auto t = to_number(line.substr(arrow + 2, slash - arrow - 2), line_no);
        const Letter out = parse_letter(line.substr(slash + 1), m.outputs);
        if (s >= m.num_states) throw ParseError("state " + std::to_string(s) + " out of range", line_no, 1);
        if (t >= m.num_states)
          throw ParseError("dangling successor " + std::to_string(t), line_no, arrow + 3);
        const auto idx = m.index(static_cast<StateId>(s), in);
        if (covered[idx]) throw ParseError("duplicate transition", line_no, 1);
        covered[idx] = true;
        m.next[idx] = static_cast<StateId>(t);
        m.labels[idx] = out;
      }
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no, 1);
    }
  }
  if (!saw_magic) throw ParseError("empty machine file", 0, 0);
  if (!saw_states) throw ParseError("missing 'states' declaration", 0, 0);
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw ParseError("transition table incomplete", 0, 0);
  m.validate();
  return m;
}

std::string to_dot(const MealyMachine& m) {
  std::ostringstream out;
  out << "digraph mealy {\n  rankdir=LR;\n  init [shape=point];\n  init -> s" << m.start
      << " [label=\"" << format_letter(m.initial_input, m.inputs) << "\"];\n";
  for (StateId s = 0; s < m.num_states; ++s) out << "  s" << s << " [label=\"" << s << "\"];\n";
  for (StateId s = 0; s < m.num_states; ++s)
    for (Letter a = 0; a < m.alphabet(); ++a)
      out << "  s" << s << " -> s" << m.successor(s, a) << " [label=\"" << format_letter(a, m.inputs)
          << " / " << format_letter(m.label(s, a), m.outputs) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace succinct::mealy
