#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "succinct/automata.hpp"
#include "succinct/error.hpp"

namespace succinct::automata {

namespace {

// Explicit two-player game graph. Eve owns positions with owner 0.
struct Game {
  std::vector<std::uint8_t> eve;
  std::vector<std::uint8_t> target;  // Büchi set of Adam (final states)
  std::vector<std::vector<std::uint32_t>> moves;

  std::uint32_t add(bool eve_owned, bool final) {
    eve.push_back(eve_owned);
    target.push_back(final);
    moves.emplace_back();
    return static_cast<std::uint32_t>(eve.size() - 1);
  }

  // Positions of `alive` from which `player` forces a visit to `goal`.
  std::vector<std::uint8_t> attractor(const std::vector<std::uint8_t>& alive, std::vector<std::uint8_t> goal,
                                      bool player_eve) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < eve.size(); ++v) {
        if (!alive[v] || goal[v]) continue;
        bool any = false, all = true;
        for (auto w : moves[v]) {
          if (!alive[w]) continue;
          any = any || goal[w];
          all = all && goal[w];
        }
        const bool mine = (eve[v] != 0) == player_eve;
        if (mine ? any : all) {
          goal[v] = 1;
          changed = true;
        }
      }
    }
    return goal;
  }

  // Eve wins iff the play visits target finitely often or Adam gets stuck.
  std::vector<std::uint8_t> solve_co_buchi() const {
    const std::size_t n = eve.size();
    std::vector<std::uint8_t> alive(n, 1), won(n, 0);
    for (;;) {
      std::vector<std::uint8_t> goal(n, 0);
      for (std::size_t v = 0; v < n; ++v) goal[v] = alive[v] && target[v];
      const auto adam = attractor(alive, goal, false);
      std::vector<std::uint8_t> trap(n, 0);
      bool nonempty = false;
      for (std::size_t v = 0; v < n; ++v) {
        trap[v] = alive[v] && !adam[v];
        nonempty = nonempty || trap[v];
      }
      if (!nonempty) break;
      const auto part = attractor(alive, trap, true);
      for (std::size_t v = 0; v < n; ++v)
        if (part[v]) won[v] = 1, alive[v] = 0;
    }
    return won;
  }
};

}  // namespace

bool alternating_accepts(const AlternatingAutomaton& a, const mealy::MealyMachine& m, bool minimal_only) {
  if (m.inputs != a.spec().inputs || m.outputs != a.spec().outputs)
    throw ValidationError("machine and automaton declare different propositions");
  const auto k = mealy::to_kripke(m);
  Game g;
  std::map<std::pair<std::uint32_t, UState>, std::uint32_t> index;
  std::deque<std::pair<std::uint32_t, UState>> work;
  auto position = [&](std::uint32_t node, UState q) {
    auto [it, fresh] = index.emplace(std::make_pair(node, q), 0);
    if (fresh) {
      it->second = g.add(true, a.is_final(q));
      work.emplace_back(node, q);
    }
    return it->second;
  };
  const auto root = position(0, a.state_for(a.dag().root(), k.input[0]));
  while (!work.empty()) {
    auto [node, q] = work.front();
    work.pop_front();
    const auto self = index.at({node, q});
    const auto f = a.transition(q, k.output[node]);
    const auto sets = minimal_only ? minimal_models(f) : all_models(f);
    for (const auto& set : sets) {
      const auto choice = g.add(false, false);
      g.moves[self].push_back(choice);
      for (auto atom : set) {
        const auto ob = a.obligation_of(atom);
        const auto next = position(k.successor(node, ob.direction), ob.state);
        g.moves[choice].push_back(next);
      }
    }
  }
  return g.solve_co_buchi()[root] != 0;
}

bool universal_accepts(const UniversalAutomaton& u, const mealy::AnnotatedMachine& m) {
  using Node = std::tuple<mealy::StateId, Letter, UState>;
  std::map<Node, std::uint32_t> index;
  std::vector<Node> nodes;
  std::vector<std::vector<std::uint32_t>> succ;
  std::deque<std::uint32_t> work;
  auto intern = [&](const Node& n) {
    auto [it, fresh] = index.emplace(n, static_cast<std::uint32_t>(nodes.size()));
    if (fresh) {
      nodes.push_back(n);
      succ.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  intern({m.start, m.initial_input, u.initial()});
  while (!work.empty()) {
    const auto v = work.front();
    work.pop_front();
    const auto [s, in, q] = nodes[v];
    const auto obs = u.successors(q, m.label(s, in));
    if (!obs) return false;
    const auto t = m.successor(s, in);
    for (const auto& ob : *obs) {
      const auto w = intern({t, ob.direction, ob.state});
      succ[v].push_back(w);
    }
  }
  // Reject iff some final node lies on a cycle.
  for (std::uint32_t f = 0; f < nodes.size(); ++f) {
    if (!u.is_final(std::get<2>(nodes[f]))) continue;
    std::vector<std::uint8_t> seen(nodes.size(), 0);
    std::vector<std::uint32_t> stack(succ[f].begin(), succ[f].end());
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      if (v == f) return false;
      if (seen[v]) continue;
      seen[v] = 1;
      stack.insert(stack.end(), succ[v].begin(), succ[v].end());
    }
  }
  return true;
}

}  // namespace succinct::automata
