#include "succinct/safety.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <map>
#include <set>

#include "succinct/audit.hpp"
#include "succinct/error.hpp"

namespace succinct::synth {

using automata::Obligations;

namespace {

// Folds (state, count) pairs into a sorted map keeping the maximum count.
void normalize(CounterMap& m) {
  std::sort(m.begin(), m.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  });
  m.erase(std::unique(m.begin(), m.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
          m.end());
}

}  // namespace

CounterMap initial_state(const UniversalAutomaton& u) {
  const UState q = u.initial();
  return {{q, u.is_final(q) ? 1U : 0U}};
}

std::optional<CounterMap> safety_step(const UniversalAutomaton& u, const CounterMap& f, const AnnotatedOutput& letter,
                                      Letter input, std::uint32_t k) {
  CounterMap out;
  for (const auto& [q, c] : f) {
    const auto obs = u.successors(q, letter);
    if (!obs) throw InvalidLetter("letter is not a transition of state " + u.describe(q));
    for (const auto& ob : *obs) {
      if (ob.direction != input) continue;
      out.emplace_back(ob.state, c + (u.is_final(ob.state) ? 1U : 0U));
    }
  }
  normalize(out);
  for (const auto& e : out)
    if (e.second > k) return std::nullopt;
  return out;
}

std::string describe(const UniversalAutomaton& u, const CounterMap& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ", ";
    out += u.describe(f[i].first) + ": " + std::to_string(f[i].second);
  }
  return out + "}";
}

std::string digest(const CounterMap& f) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  };
  mix(f.size());
  for (const auto& [q, c] : f) {
    mix(q);
    mix(c);
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i, h >>= 4) buf[i] = hex[h & 0xFU];
  buf[16] = 0;
  return buf;
}

std::size_t SafetyGame::MapHash::operator()(const CounterMap& m) const {
  std::uint64_t h = 0x84222325CBF29CE4ULL ^ m.size();
  for (const auto& [q, c] : m) {
    h ^= q + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= c + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

SafetyGame::SafetyGame(std::shared_ptr<const UniversalAutomaton> u, std::uint32_t k, GameLimits limits)
    : u_(std::move(u)), k_(k), limits_(limits) {}

std::size_t SafetyGame::arena_size() const {
  std::lock_guard lock(mu_);
  return nodes_.size();
}

bool SafetyGame::over_bound(const CounterMap& f) const {
  return std::any_of(f.begin(), f.end(), [&](const auto& e) { return e.second > k_; });
}

std::vector<UState> SafetyGame::states_of(const CounterMap& f) const {
  std::vector<UState> s;
  s.reserve(f.size());
  for (const auto& e : f) s.push_back(e.first);
  return s;
}

std::uint32_t SafetyGame::intern(CounterMap m, std::vector<std::uint32_t>& fresh) {
  auto it = ids_.find(m);
  if (it != ids_.end()) return it->second;
  if (nodes_.size() >= limits_.max_nodes) {
    broken_ = true;
    throw ResourceExhausted("safety arena exceeded " + std::to_string(limits_.max_nodes) + " states at k=" +
                            std::to_string(k_));
  }
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  ids_.emplace(m, id);
  nodes_.push_back(Node{std::move(m), {}, {}, {}, 0, false, false});
  fresh.push_back(id);
  return id;
}

bool SafetyGame::successors_into(const CounterMap& f, const std::vector<const Obligations*>& succ, Letter dir,
                                 CounterMap& out) const {
  out.clear();
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (const auto& ob : *succ[i]) {
      if (ob.direction != dir) continue;
      const std::uint32_t c = f[i].second + (u_->is_final(ob.state) ? 1U : 0U);
      if (c > k_) return false;
      out.emplace_back(ob.state, c);
    }
  }
  normalize(out);
  return true;
}

std::uint32_t SafetyGame::prepare(const CounterMap& root) {
  if (broken_) throw ResourceExhausted("safety arena was truncated by an earlier resource error");
  std::vector<std::uint32_t> stack;
  const auto root_id = intern(root, stack);
  if (nodes_[root_id].explored) return root_id;
  if (stack.empty()) stack.push_back(root_id);

  const std::size_t D = u_->directions();
  std::vector<std::uint32_t> batch;
  std::vector<CounterMap> outs(D);
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (nodes_[v].explored) continue;
    nodes_[v].explored = true;
    batch.push_back(v);
    const CounterMap f = nodes_[v].map;
    const auto states = states_of(f);
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::vector<std::uint32_t>> options;
    u_->for_each_letter(states, "", [&](const AnnotatedOutput&, const std::vector<const Obligations*>& succ) {
      for (Letter d = 0; d < D; ++d)
        if (!successors_into(f, succ, d, outs[d])) return true;
      std::vector<std::uint32_t> opt(D);
      for (Letter d = 0; d < D; ++d) opt[d] = intern(outs[d], stack);
      if (seen.insert(opt).second) options.push_back(std::move(opt));
      return true;
    });
    nodes_[v].options = std::move(options);
  }

  // Deletion fixpoint over the newly explored part. Older nodes were solved
  // on complete subarenas and never point into the new part.
  std::vector<std::uint32_t> dying;
  for (auto v : batch) {
    auto& n = nodes_[v];
    n.alive = static_cast<std::uint32_t>(n.options.size());
    n.option_dead.assign(n.options.size(), 0);
  }
  for (auto v : batch) {
    for (std::uint32_t o = 0; o < nodes_[v].options.size(); ++o) {
      for (auto w : nodes_[v].options[o]) {
        if (nodes_[w].dead) {
          if (!nodes_[v].option_dead[o]) {
            nodes_[v].option_dead[o] = 1;
            --nodes_[v].alive;
          }
        } else {
          nodes_[w].preds.emplace_back(v, o);
        }
      }
    }
  }
  for (auto v : batch)
    if (nodes_[v].alive == 0) {
      nodes_[v].dead = true;
      dying.push_back(v);
    }
  while (!dying.empty()) {
    const auto w = dying.back();
    dying.pop_back();
    for (auto [p, o] : nodes_[w].preds) {
      auto& n = nodes_[p];
      if (n.dead || n.option_dead[o]) continue;
      n.option_dead[o] = 1;
      if (--n.alive == 0) {
        n.dead = true;
        dying.push_back(p);
      }
    }
  }
  return root_id;
}

bool SafetyGame::is_winning(const CounterMap& f) {
  if (over_bound(f)) return false;
  std::lock_guard lock(mu_);
  return !nodes_[prepare(f)].dead;
}

bool SafetyGame::letter_wins(const CounterMap& f, const std::vector<const Obligations*>& succ) {
  const std::size_t D = u_->directions();
  std::vector<CounterMap> outs(D);
  for (Letter d = 0; d < D; ++d)
    if (!successors_into(f, succ, d, outs[d])) return false;
  for (Letter d = 0; d < D; ++d)
    if (nodes_[prepare(outs[d])].dead) return false;
  return true;
}

bool SafetyGame::good_output_locked(const CounterMap& f, std::string_view prefix) {
  if (over_bound(f)) return false;
  if (nodes_[prepare(f)].dead) return false;
  const auto states = states_of(f);
  bool found = false;
  u_->for_each_letter(states, prefix, [&](const AnnotatedOutput&, const std::vector<const Obligations*>& succ) {
    found = letter_wins(f, succ);
    return !found;
  });
  return found;
}

bool SafetyGame::good_output_exists(const CounterMap& f, std::string_view prefix) {
  std::lock_guard lock(mu_);
  return good_output_locked(f, prefix);
}

AnnotatedOutput SafetyGame::find_output(const CounterMap& f, Mode mode) {
  std::lock_guard lock(mu_);
  if (over_bound(f) || nodes_[prepare(f)].dead)
    throw ContractViolation("find_output called on a losing state " + describe(*u_, f));
  const auto& layout = u_->layout();
  if (mode == Mode::Enumerate) {
    std::optional<AnnotatedOutput> best;
    u_->for_each_letter(states_of(f), "",
                        [&](const AnnotatedOutput& letter, const std::vector<const Obligations*>& succ) {
                          if (!letter_wins(f, succ)) return true;
                          best = letter;
                          return false;
                        });
    audit::require(best.has_value(), "winning state without a winning letter: " + describe(*u_, f));
    return *best;
  }
  std::string prefix;
  prefix.reserve(layout.width());
  while (prefix.size() < layout.width()) {
    prefix.push_back('0');
    if (!good_output_locked(f, prefix)) prefix.back() = '1';
  }
  audit::require(good_output_locked(f, prefix), "binary search ended on a losing letter");
  return decode_bits(prefix, layout);
}

std::optional<std::vector<CounterMap>> SafetyGame::winning_successors(const CounterMap& f,
                                                                       const AnnotatedOutput& letter) {
  std::vector<CounterMap> outs;
  for (Letter d = 0; d < u_->directions(); ++d) {
    std::optional<CounterMap> next;
    try {
      next = safety_step(*u_, f, letter, d, k_);
    } catch (const InvalidLetter&) {
      return std::nullopt;
    }
    if (!next || !is_winning(*next)) return std::nullopt;
    outs.push_back(std::move(*next));
  }
  return outs;
}

std::vector<std::uint32_t> k_schedule(std::uint32_t cap) {
  std::vector<std::uint32_t> ks{0};
  for (std::uint32_t k = 1; k < cap; k *= 2) ks.push_back(k);
  if (cap > 0) ks.push_back(cap);
  return ks;
}

std::uint32_t default_k_max() {
  if (const char* env = std::getenv("SUCCINCT_K_MAX")) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec == std::errc() && *p == '\0') return v;
  }
  return 32;
}

SolveResult solve(std::shared_ptr<const UniversalAutomaton> u, const SolveOptions& options) {
  SolveResult result;
  const auto f0 = initial_state(*u);
  const auto ks = k_schedule(options.k_max);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto k = ks[i];
    result.tried.push_back(k);
    auto game = std::make_shared<SafetyGame>(u, k, options.limits);
    if (!game->is_winning(f0)) continue;
    if (options.audit_monotonicity) {
      const auto next = i + 1 < ks.size() ? ks[i + 1] : k + 1;
      SafetyGame check(u, next, options.limits);
      audit::require(check.is_winning(f0), "winning at k=" + std::to_string(k) + " but not at k=" +
                                               std::to_string(next));
    }
    result.realizable = true;
    result.k = k;
    result.strategy = Strategy{std::move(game), f0, options.mode};
    return result;
  }
  result.k = ks.back();
  return result;
}

mealy::AnnotatedMachine extract_mealy(const Strategy& s) {
  const auto& u = s.game->automaton();
  const auto k = s.game->k();
  const std::size_t D = u.directions();
  std::map<CounterMap, std::uint32_t> ids;
  std::vector<CounterMap> maps;
  std::vector<AnnotatedOutput> chosen;
  auto add = [&](const CounterMap& f) {
    auto [it, fresh] = ids.emplace(f, static_cast<std::uint32_t>(maps.size()));
    if (fresh) {
      audit::require(std::all_of(f.begin(), f.end(), [&](const auto& e) { return e.second <= k; }),
                     "extracted state exceeds the counter bound: " + describe(u, f));
      audit::require(s.game->is_winning(f), "extracted state is losing: " + describe(u, f));
      maps.push_back(f);
      chosen.push_back(s.choose(f));
    }
    return it->second;
  };
  add(s.initial);
  std::vector<std::uint32_t> next;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (Letter d = 0; d < D; ++d) {
      const auto f = maps[i];
      const auto letter = chosen[i];
      auto succ = safety_step(u, f, letter, d, k);
      audit::require(succ.has_value(), "chosen letter blocks at " + describe(u, f));
      next.push_back(add(*succ));
    }
  }
  const std::size_t n = maps.size();
  const Letter init = u.initial_input();
  const bool merge = next[init] == 0;
  auto m = mealy::AnnotatedMachine::with_states(u.inputs(), u.outputs(), merge ? n : n + 1);
  m.initial_input = init;
  for (std::uint32_t i = 0; i < n; ++i)
    for (Letter d = 0; d < D; ++d) m.set(i, d, next[i * D + d], chosen[next[i * D + d]]);
  if (merge) {
    m.start = 0;
  } else {
    const auto r = static_cast<mealy::StateId>(n);
    for (Letter d = 0; d < D; ++d) m.set(r, d, next[d], chosen[next[d]]);
    m.set(r, init, 0, chosen[0]);
    m.start = r;
  }
  return m;
}

}  // namespace succinct::synth
