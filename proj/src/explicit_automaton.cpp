#include <algorithm>
#include <cctype>
#include <map>

#include "succinct/automata.hpp"
#include "succinct/error.hpp"

namespace succinct::automata {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
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

class ExplicitAutomaton final : public UniversalAutomaton {
 public:
  std::vector<std::string> inputs_, outputs_, states_;
  std::vector<std::uint8_t> final_;
  UState initial_ = 0;
  Letter init_ = 0;
  LetterLayout layout_;
  // table_[q * |outputs| + out]; nullopt = not a transition.
  std::vector<std::optional<Obligations>> table_;

  const std::vector<std::string>& inputs() const override { return inputs_; }
  const std::vector<std::string>& outputs() const override { return outputs_; }
  Letter initial_input() const override { return init_; }
  const LetterLayout& layout() const override { return layout_; }
  UState initial() const override { return initial_; }
  bool is_final(UState q) const override { return final_[q] != 0; }
  std::string describe(UState q) const override { return states_[q]; }

  std::optional<Obligations> successors(UState q, const AnnotatedOutput& letter) const override {
    if (letter.claimed_input != 0 || !letter.choices.empty() || letter.output >> outputs_.size()) return std::nullopt;
    return table_[q * alphabet_size(outputs_.size()) + letter.output];
  }

  void for_each_letter(std::span<const UState> states, std::string_view prefix,
                       const LetterVisitor& visit) const override {
    if (prefix.size() > layout_.width()) return;
    AnnotatedOutput letter;
    std::vector<const Obligations*> succ(states.size());
    bool stopped = false;
    auto dfs = [&](auto&& self, std::size_t bit) -> void {
      if (stopped) return;
      if (bit == outputs_.size()) {
        for (std::size_t i = 0; i < states.size(); ++i) {
          const auto& t = table_[states[i] * alphabet_size(outputs_.size()) + letter.output];
          if (!t) return;
          succ[i] = &*t;
        }
        if (!visit(letter, succ)) stopped = true;
        return;
      }
      for (int v = 0; v < 2; ++v) {
        if (bit < prefix.size() && prefix[bit] != (v ? '1' : '0')) continue;
        if (v) letter.output |= Letter{1} << bit;
        self(self, bit + 1);
        letter.output &= ~(Letter{1} << bit);
      }
    };
    for (char c : prefix)
      if (c != '0' && c != '1') return;
    dfs(dfs, 0);
  }
};

}  // namespace

std::shared_ptr<const UniversalAutomaton> parse_explicit_automaton(std::string_view text) {
  auto a = std::make_shared<ExplicitAutomaton>();
  std::map<std::string, UState, std::less<>> ids;
  bool magic = false, have_states = false;
  std::string initial_name;
  std::vector<std::string> final_names;
  std::size_t line_no = 0, pos = 0;
  auto state_id = [&](std::string_view name, std::size_t col) {
    auto it = ids.find(trim(name));
    if (it == ids.end()) throw ParseError("unknown state '" + std::string(trim(name)) + "'", line_no, col);
    return it->second;
  };
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!magic) {
      if (line != "automaton") throw ParseError("expected 'automaton' header", line_no, 1);
      magic = true;
      continue;
    }
    const auto space = line.find_first_of(" \t");
    const std::string_view head = line.substr(0, space);
    const std::string_view rest = space == std::string_view::npos ? std::string_view() : trim(line.substr(space));
    try {
      if (head == "inputs") {
        a->inputs_ = split_list(rest);
      } else if (head == "outputs") {
        a->outputs_ = split_list(rest);
      } else if (head == "states") {
        a->states_ = split_list(rest);
        for (std::size_t i = 0; i < a->states_.size(); ++i)
          if (!ids.emplace(a->states_[i], i).second)
            throw ParseError("duplicate state '" + a->states_[i] + "'", line_no, 1);
        if (a->inputs_.size() > kMaxPropositions || a->outputs_.size() > 16)
          throw ParseError("too many propositions for an explicit automaton", line_no, 1);
        a->final_.assign(a->states_.size(), 0);
        a->table_.assign(a->states_.size() * alphabet_size(a->outputs_.size()), std::nullopt);
        have_states = true;
      } else if (head == "initial") {
        initial_name = std::string(rest);
      } else if (head == "final") {
        final_names = split_list(rest);
      } else if (head == "init") {
        a->init_ = parse_letter(rest, a->inputs_);
      } else {
        if (!have_states) throw ParseError("transition before 'states'", line_no, 1);
        const auto arrow = line.find("->");
        if (arrow == std::string_view::npos) throw ParseError("expected '->'", line_no, 1);
        const auto lhs = trim(line.substr(0, arrow));
        const auto sp = lhs.find_first_of(" \t");
        if (sp == std::string_view::npos) throw ParseError("expected '<state> <output letter>'", line_no, 1);
        const UState q = state_id(lhs.substr(0, sp), 1);
        const auto out_text = trim(lhs.substr(sp));
        std::vector<Letter> outs;
        if (out_text == "*") {
          for (Letter o = 0; o < alphabet_size(a->outputs_.size()); ++o) outs.push_back(o);
        } else {
          outs.push_back(parse_letter(out_text, a->outputs_));
        }
        Obligations obs;
        std::string_view targets = trim(line.substr(arrow + 2));
        while (!targets.empty()) {
          if (targets.front() != '(') throw ParseError("expected '(' in target list", line_no, arrow + 3);
          const auto close = targets.find(')');
          const auto comma = targets.find(',');
          if (close == std::string_view::npos || comma == std::string_view::npos || comma > close)
            throw ParseError("expected '(state, direction)'", line_no, arrow + 3);
          const UState t = state_id(targets.substr(1, comma - 1), arrow + 3);
          const auto dir = trim(targets.substr(comma + 1, close - comma - 1));
          if (dir == "*") {
            for (Letter d = 0; d < alphabet_size(a->inputs_.size()); ++d) obs.push_back({t, d});
          } else {
            obs.push_back({t, parse_letter(dir, a->inputs_)});
          }
          targets = trim(targets.substr(close + 1));
        }
        std::sort(obs.begin(), obs.end());
        obs.erase(std::unique(obs.begin(), obs.end()), obs.end());
        for (auto o : outs) a->table_[q * alphabet_size(a->outputs_.size()) + o] = obs;
      }
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no, 1);
    }
  }
  if (!magic || !have_states) throw ParseError("incomplete automaton description", 0, 0);
  if (initial_name.empty()) throw ParseError("missing 'initial' state", 0, 0);
  a->initial_ = state_id(initial_name, 1);
  for (const auto& f : final_names) a->final_[state_id(f, 1)] = 1;
  a->layout_.output_bits = a->outputs_.size();
  return a;
}

}  // namespace succinct::automata
