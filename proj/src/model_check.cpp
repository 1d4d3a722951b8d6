#include "succinct/model_check.hpp"

#include <algorithm>
#include <deque>

#include "succinct/error.hpp"

namespace succinct::ctl {

namespace {

using Bits = std::vector<std::uint8_t>;

// Predecessor edges in CSR form; an edge appears once per input letter that
// takes its source to its target, so counts below are multiplicities.
struct Predecessors {
  std::vector<std::uint32_t> offset;
  std::vector<std::uint32_t> source;

  explicit Predecessors(const mealy::KripkeQuotient& k) {
    const std::size_t n = k.size();
    offset.assign(n + 1, 0);
    for (auto t : k.succ) ++offset[t + 1];
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
    source.resize(k.succ.size());
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (std::uint32_t s = 0; s < n; ++s)
      for (std::size_t a = 0; a < k.alphabet; ++a) source[fill[k.succ[s * k.alphabet + a]]++] = s;
  }

  template <class F>
  void each(std::uint32_t node, F&& fn) const {
    for (auto e = offset[node]; e < offset[node + 1]; ++e) fn(source[e]);
  }
};

class Labeler {
 public:
  Labeler(const mealy::KripkeQuotient& k, const std::vector<std::string>& inputs,
          const std::vector<std::string>& outputs)
      : k_(k), pred_(k), inputs_(inputs), outputs_(outputs) {}

  LabelTable run(const SubformulaDag& dag) {
    for (std::size_t id = 0; id < dag.size(); ++id) {
      const auto n = arity(dag.kind(id));
      table_.holds.push_back(compute(dag.at(id), n >= 1 ? dag.lhs(id) : 0, n == 2 ? dag.rhs(id) : 0));
      table_.subformulas.push_back(dag.at(id));
    }
    return std::move(table_);
  }

 private:
  Bits compute(const Formula& f, std::size_t ia, std::size_t ib) {
    const std::size_t n = k_.size();
    auto& H = table_.holds;
    switch (f.kind()) {
      case Kind::True: return Bits(n, 1);
      case Kind::False: return Bits(n, 0);
      case Kind::Atom: return atom(f.name());
      case Kind::Not: {
        Bits r(n);
        for (std::size_t v = 0; v < n; ++v) r[v] = !H[ia][v];
        return r;
      }
      case Kind::And:
      case Kind::Or: {
        Bits r(n);
        const bool conj = f.kind() == Kind::And;
        for (std::size_t v = 0; v < n; ++v) r[v] = conj ? (H[ia][v] && H[ib][v]) : (H[ia][v] || H[ib][v]);
        return r;
      }
      case Kind::AX:
      case Kind::EX: {
        Bits r(n);
        const bool all = f.kind() == Kind::AX;
        for (std::uint32_t v = 0; v < n; ++v) {
          bool acc = all;
          for (Letter s = 0; s < k_.alphabet; ++s) {
            const bool x = H[ia][k_.successor(v, s)] != 0;
            acc = all ? (acc && x) : (acc || x);
          }
          r[v] = acc;
        }
        return r;
      }
      case Kind::EU: return until(H[ia], H[ib], false);
      case Kind::AU: return until(H[ia], H[ib], true);
      case Kind::ER: return release(H[ia], H[ib], false);
      case Kind::AR: return release(H[ia], H[ib], true);
    }
    return {};
  }

  Bits atom(const std::string& name) const {
    Bits r(k_.size());
    if (auto i = index_of(inputs_, name)) {
      for (std::size_t v = 0; v < r.size(); ++v) r[v] = has_bit(k_.input[v], *i);
    } else if (auto o = index_of(outputs_, name)) {
      for (std::size_t v = 0; v < r.size(); ++v) r[v] = has_bit(k_.output[v], *o);
    } else {
      throw ValidationError("undeclared atom '" + name + "'");
    }
    return r;
  }

  // Least fixpoint of Z = b ∨ (a ∧ [AX|EX] Z), grown backwards from b.
  Bits until(const Bits& a, const Bits& b, bool universal) {
    const std::size_t n = k_.size();
    Bits z(n, 0);
    std::vector<std::uint32_t> missing(n, static_cast<std::uint32_t>(k_.alphabet));
    std::deque<std::uint32_t> work;
    for (std::uint32_t v = 0; v < n; ++v)
      if (b[v]) z[v] = 1, work.push_back(v);
    while (!work.empty()) {
      const auto v = work.front();
      work.pop_front();
      pred_.each(v, [&](std::uint32_t p) {
        if (z[p] || !a[p]) return;
        if (universal && --missing[p] != 0) return;
        z[p] = 1;
        work.push_back(p);
      });
    }
    return z;
  }

  // Greatest fixpoint of Z = b ∧ (a ∨ [AX|EX] Z), shrunk by deleting nodes.
  Bits release(const Bits& a, const Bits& b, bool universal) {
    const std::size_t n = k_.size();
    Bits z(b);
    std::vector<std::uint32_t> alive(n, static_cast<std::uint32_t>(k_.alphabet));
    std::deque<std::uint32_t> work;
    for (std::uint32_t v = 0; v < n; ++v)
      if (!z[v]) work.push_back(v);
    while (!work.empty()) {
      const auto v = work.front();
      work.pop_front();
      pred_.each(v, [&](std::uint32_t p) {
        if (!z[p] || a[p]) return;
        if (!universal && --alive[p] != 0) return;
        z[p] = 0;
        work.push_back(p);
      });
    }
    return z;
  }

  const mealy::KripkeQuotient& k_;
  Predecessors pred_;
  const std::vector<std::string>& inputs_;
  const std::vector<std::string>& outputs_;
  LabelTable table_;
};

}  // namespace

LabelTable label(const mealy::KripkeQuotient& k, const std::vector<std::string>& inputs,
                 const std::vector<std::string>& outputs, const Formula& f) {
  return Labeler(k, inputs, outputs).run(SubformulaDag(f));
}

LabelTable label(const mealy::KripkeQuotient& k, const std::vector<std::string>& inputs,
                 const std::vector<std::string>& outputs, const SubformulaDag& dag) {
  return Labeler(k, inputs, outputs).run(dag);
}

bool check(const mealy::MealyMachine& m, const Formula& f) {
  const auto k = mealy::to_kripke(m);
  return label(k, m.inputs, m.outputs, f).root_holds(0);
}

}  // namespace succinct::ctl
