#pragma once

// Test-side helpers: machine builders, formula enumeration and an
// independent CTL evaluator used as an oracle against the labeling checker.

#include <cstdint>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "succinct/ctl.hpp"
#include "succinct/mealy.hpp"

namespace testing {

using succinct::Letter;
using succinct::ctl::Formula;
using succinct::ctl::Kind;
using succinct::mealy::MealyMachine;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& rel) { return std::string(FIXTURE_DIR) + "/" + rel; }

/// Single-state machine emitting `out` on every input.
inline MealyMachine constant_machine(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                     Letter out, Letter init = 0) {
  auto m = MealyMachine::with_states(std::move(inputs), std::move(outputs), 1);
  for (Letter a = 0; a < m.alphabet(); ++a) m.set(0, a, 0, out);
  m.initial_input = init;
  return m;
}

/// Two states remembering whether the previous input contained i; the output
/// g is raised iff it did.
inline MealyMachine echo_machine() {
  auto m = MealyMachine::with_states({"i"}, {"g"}, 2);
  for (succinct::mealy::StateId s = 0; s < 2; ++s) {
    m.set(s, 0, 0, s == 1 ? 1 : 0);
    m.set(s, 1, 1, s == 1 ? 1 : 0);
  }
  return m;
}

inline MealyMachine random_machine(std::mt19937_64& rng, std::size_t states, std::vector<std::string> inputs,
                                   std::vector<std::string> outputs) {
  auto m = MealyMachine::with_states(std::move(inputs), std::move(outputs), states);
  std::uniform_int_distribution<std::uint32_t> st(0, static_cast<std::uint32_t>(states - 1));
  std::uniform_int_distribution<Letter> out(0, succinct::alphabet_size(m.outputs.size()) - 1);
  std::uniform_int_distribution<Letter> in(0, m.alphabet() - 1);
  for (std::uint32_t s = 0; s < states; ++s)
    for (Letter a = 0; a < m.alphabet(); ++a) m.set(s, a, st(rng), out(rng));
  m.start = st(rng);
  m.initial_input = in(rng);
  return m;
}

/// Independent evaluator: works directly on (state, input) pairs of the
/// machine, with no quotient, no predecessor lists and no worklists. Until
/// and release are the depth-indexed approximants iterated |nodes| times.
class NaiveChecker {
 public:
  explicit NaiveChecker(const MealyMachine& m) : m_(m), n_(m.num_states * m.alphabet()) {}

  bool holds(const Formula& f) {
    const auto root = m_.index(m_.start, m_.initial_input);
    return eval(f)[root];
  }

  std::vector<bool> eval(const Formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    std::vector<bool> r(n_);
    auto succ_all = [&](const std::vector<bool>& x, std::size_t v, bool universal) {
      const auto t = m_.next[v];
      for (Letter a = 0; a < m_.alphabet(); ++a) {
        const bool ok = x[m_.index(t, a)];
        if (universal && !ok) return false;
        if (!universal && ok) return true;
      }
      return universal;
    };
    switch (f.kind()) {
      case Kind::True: r.assign(n_, true); break;
      case Kind::False: break;
      case Kind::Atom:
        for (std::size_t v = 0; v < n_; ++v) {
          const Letter in = v % m_.alphabet();
          if (auto i = succinct::index_of(m_.inputs, f.name()))
            r[v] = succinct::has_bit(in, *i);
          else if (auto o = succinct::index_of(m_.outputs, f.name()))
            r[v] = succinct::has_bit(m_.labels[v], *o);
          else
            throw std::runtime_error("unknown atom " + f.name());
        }
        break;
      case Kind::Not: {
        auto a = eval(f.child());
        for (std::size_t v = 0; v < n_; ++v) r[v] = !a[v];
        break;
      }
      case Kind::And:
      case Kind::Or: {
        auto a = eval(f.lhs()), b = eval(f.rhs());
        for (std::size_t v = 0; v < n_; ++v) r[v] = f.kind() == Kind::And ? (a[v] && b[v]) : (a[v] || b[v]);
        break;
      }
      case Kind::AX:
      case Kind::EX: {
        auto a = eval(f.child());
        for (std::size_t v = 0; v < n_; ++v) r[v] = succ_all(a, v, f.kind() == Kind::AX);
        break;
      }
      default: {
        auto a = eval(f.lhs()), b = eval(f.rhs());
        const bool until = f.kind() == Kind::AU || f.kind() == Kind::EU;
        const bool universal = f.kind() == Kind::AU || f.kind() == Kind::AR;
        r = b;
        for (std::size_t round = 0; round <= n_; ++round) {
          std::vector<bool> next(n_);
          for (std::size_t v = 0; v < n_; ++v) {
            const bool step = succ_all(r, v, universal);
            next[v] = until ? (b[v] || (a[v] && step)) : (b[v] && (a[v] || step));
          }
          r = std::move(next);
        }
      }
    }
    memo_.emplace(f.identity(), r);
    keep_.push_back(f);
    return r;
  }

 private:
  const MealyMachine& m_;
  std::size_t n_;
  std::unordered_map<const void*, std::vector<bool>> memo_;
  std::vector<Formula> keep_;
};

inline bool naive_check(const MealyMachine& m, const Formula& f) { return NaiveChecker(m).holds(f); }

/// All NNF formulas with exactly `size` nodes over the given atoms,
/// generated bottom-up. by_size[n] lists formulas of size n.
inline std::vector<std::vector<Formula>> enumerate_nnf(const std::vector<std::string>& atoms, std::size_t max_size) {
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  if (max_size == 0) return by_size;
  by_size[1].push_back(Formula::top());
  by_size[1].push_back(Formula::bottom());
  for (const auto& a : atoms) by_size[1].push_back(Formula::atom(a));
  for (std::size_t n = 2; n <= max_size; ++n) {
    if (n == 2)
      for (const auto& a : atoms) by_size[2].push_back(Formula::neg(Formula::atom(a)));
    for (const auto& c : by_size[n - 1]) {
      by_size[n].push_back(Formula::ax(c));
      by_size[n].push_back(Formula::ex(c));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const std::size_t j = n - 1 - i;
      for (const auto& a : by_size[i])
        for (const auto& b : by_size[j])
          for (Kind k : {Kind::And, Kind::Or, Kind::AU, Kind::EU, Kind::AR, Kind::ER})
            by_size[n].push_back(Formula::make(k, a, b));
    }
  }
  return by_size;
}

inline Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
  switch (pick(rng)) {
    case 0: return Formula::atom(atoms[rng() % atoms.size()]);
    case 1: return Formula::atom(atoms[rng() % atoms.size()]);
    case 2: return rng() % 4 == 0 ? (rng() % 2 ? Formula::top() : Formula::bottom()) : Formula::atom(atoms[rng() % atoms.size()]);
    case 3: return Formula::neg(random_formula(rng, atoms, depth - 1));
    case 4: return Formula::conj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 5: return Formula::disj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 6: return Formula::ax(random_formula(rng, atoms, depth - 1));
    case 7: return Formula::ex(random_formula(rng, atoms, depth - 1));
    case 8: return Formula::au(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 9: return Formula::eu(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 10: return Formula::ar(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default: return Formula::er(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

}  // namespace testing
