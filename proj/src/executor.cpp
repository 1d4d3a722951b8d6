#include "succinct/executor.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "succinct/audit.hpp"
#include "succinct/automata.hpp"
#include "succinct/error.hpp"

namespace succinct::exec {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Winning: return "winning";
    case Verdict::Losing: return "losing";
    case Verdict::Invalid: return "invalid";
  }
  return "invalid";
}

std::unique_ptr<Session> Session::create(const ctl::Spec& spec, const synth::SolveOptions& options) {
  return create(automata::to_universal(automata::ctl_to_alternating(spec)), options);
}

std::unique_ptr<Session> Session::create(std::shared_ptr<const automata::UniversalAutomaton> u,
                                         const synth::SolveOptions& options) {
  auto r = synth::solve(std::move(u), options);
  if (!r.realizable)
    throw Unrealizable("no winning strategy up to k=" + std::to_string(r.k) + " (unknown at k-cap)");
  return std::make_unique<Session>(std::move(r.strategy));
}

// Readers back off while a writer waits, so a stream of queries cannot
// starve steps.
std::shared_lock<std::shared_mutex> Session::read_lock() const {
  while (writers_waiting_.load() != 0) std::this_thread::yield();
  return std::shared_lock(mu_);
}

std::unique_lock<std::shared_mutex> Session::write_lock() const {
  ++writers_waiting_;
  std::unique_lock lock(mu_);
  --writers_waiting_;
  return lock;
}

Session::Session(synth::Strategy strategy) : strategy_(std::move(strategy)), current_(strategy_.initial) {
  audit::require(strategy_.game->is_winning(current_), "session starts in a losing state");
  chosen_ = strategy_.choose(current_);
}

const std::vector<std::string>& Session::inputs() const { return strategy_.game->automaton().inputs(); }
const std::vector<std::string>& Session::outputs() const { return strategy_.game->automaton().outputs(); }

Letter Session::initial_output() const {
  auto lock = read_lock();
  return history_.empty() ? chosen_.output : history_.front().previous_chosen.output;
}

Letter Session::step(Letter input) {
  const auto& u = strategy_.game->automaton();
  if (input >> u.inputs().size()) throw InvalidLetter("input letter uses undeclared propositions");
  auto lock = write_lock();
  auto next = synth::safety_step(u, current_, chosen_, input, k());
  audit::require(next.has_value(), "chosen letter blocks at " + synth::describe(u, current_));
  audit::require(strategy_.game->is_winning(*next), "step reached a losing state " + synth::describe(u, *next));
  auto letter = strategy_.choose(*next);
  history_.push_back(Frame{input, letter, std::move(current_), std::move(chosen_)});
  current_ = std::move(*next);
  chosen_ = std::move(letter);
  return chosen_.output;
}

void Session::undo() {
  auto lock = write_lock();
  if (history_.empty()) throw ContractViolation("nothing to undo");
  current_ = std::move(history_.back().previous);
  chosen_ = std::move(history_.back().previous_chosen);
  history_.pop_back();
}

Verdict Session::what_if_locked(std::string_view prefix, Letter next_input) const {
  const auto& u = strategy_.game->automaton();
  const auto& layout = u.layout();
  if (prefix.size() > layout.width()) return Verdict::Invalid;
  for (char c : prefix)
    if (c != '0' && c != '1') return Verdict::Invalid;
  if (next_input >> u.inputs().size()) return Verdict::Invalid;
  const auto next = synth::safety_step(u, current_, chosen_, next_input, k());
  if (!next) return Verdict::Losing;
  if (prefix.size() == layout.width()) {
    const auto letter = decode_bits(std::string(prefix), layout);
    for (const auto& [q, c] : *next)
      if (!u.successors(q, letter)) return Verdict::Invalid;
  }
  return strategy_.game->good_output_exists(*next, prefix) ? Verdict::Winning : Verdict::Losing;
}

Verdict Session::what_if(std::string_view prefix, Letter next_input) const {
  auto lock = read_lock();
  return what_if_locked(prefix, next_input);
}

Verdict Session::what_if(const std::map<std::string, bool>& assignment, Letter next_input) const {
  const auto& outs = outputs();
  Letter fixed_mask = 0, fixed = 0;
  std::size_t len = 0;
  for (const auto& [name, value] : assignment) {
    const auto i = index_of(outs, name);
    if (!i) return Verdict::Invalid;
    fixed_mask |= Letter{1} << *i;
    if (value) fixed |= Letter{1} << *i;
    len = std::max(len, *i + 1);
  }
  // Free output bits below the last assigned one range over both values.
  auto lock = read_lock();
  const Letter free_mask = ((Letter{1} << len) - 1) & ~fixed_mask;
  Letter sub = 0;
  bool valid = false;
  do {
    std::string prefix(len, '0');
    for (std::size_t b = 0; b < len; ++b)
      if (has_bit(fixed | sub, b)) prefix[b] = '1';
    const auto v = what_if_locked(prefix, next_input);
    if (v == Verdict::Winning) return v;
    valid = valid || v == Verdict::Losing;
    sub = (sub - free_mask) & free_mask;
  } while (sub != 0);
  return valid ? Verdict::Losing : Verdict::Invalid;
}

CounterMap Session::current() const {
  auto lock = read_lock();
  return current_;
}

AnnotatedOutput Session::chosen() const {
  auto lock = read_lock();
  return chosen_;
}

std::string Session::digest() const {
  auto lock = read_lock();
  return synth::digest(current_);
}

std::string Session::describe_state() const {
  auto lock = read_lock();
  return synth::describe(strategy_.game->automaton(), current_);
}

std::vector<Frame> Session::history() const {
  auto lock = read_lock();
  return history_;
}

std::size_t Session::depth() const {
  auto lock = read_lock();
  return history_.size();
}

}  // namespace succinct::exec
