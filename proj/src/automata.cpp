#include "succinct/automata.hpp"

#include <algorithm>
#include <bit>

#include "succinct/error.hpp"

namespace succinct::automata {

using ctl::Kind;

namespace {

constexpr std::uint64_t kBoundCap = std::uint64_t{1} << 32;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kBoundCap, a + b); }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kBoundCap / b) return kBoundCap;
  return std::min(kBoundCap, a * b);
}

unsigned bits_for(std::uint64_t count) {
  unsigned w = 0;
  while ((std::uint64_t{1} << w) < count) ++w;
  return w;
}

}  // namespace

AlternatingAutomaton::AlternatingAutomaton(const ctl::Spec& spec)
    : spec_{ctl::to_nnf(spec.formula), spec.inputs, spec.outputs, spec.initial_input},
      dag_(spec_.formula),
      directions_(alphabet_size(spec.inputs.size())) {
  ctl::validate(spec_);
  const std::size_t n = dag_.size();
  input_mask_.assign(n, 0);
  output_mask_.assign(n, 0);
  atom_input_.assign(n, -1);
  atom_output_.assign(n, -1);
  propositional_.assign(n, 1);
  bound_.assign(n, 1);
  slot_index_.assign(n, -1);
  std::vector<std::uint8_t> slot(n, 0);
  slot[dag_.root()] = 1;
  const std::uint64_t D = directions_;

  // Children precede parents in the DAG, so one ascending pass suffices.
  for (std::size_t id = 0; id < n; ++id) {
    const Kind k = dag_.kind(id);
    const std::size_t a = ctl::arity(k) >= 1 ? dag_.lhs(id) : 0;
    const std::size_t b = ctl::arity(k) == 2 ? dag_.rhs(id) : 0;
    switch (k) {
      case Kind::True:
      case Kind::False: break;
      case Kind::Atom: {
        const auto& name = dag_.at(id).name();
        if (auto i = index_of(spec_.inputs, name)) {
          atom_input_[id] = static_cast<int>(*i);
          input_mask_[id] = Letter{1} << *i;
        } else if (auto o = index_of(spec_.outputs, name)) {
          atom_output_[id] = static_cast<int>(*o);
          output_mask_[id] = Letter{1} << *o;
        }
        break;
      }
      case Kind::Not:
        input_mask_[id] = input_mask_[a];
        output_mask_[id] = output_mask_[a];
        break;
      case Kind::AX:
      case Kind::EX:
        slot[a] = 1;
        propositional_[id] = 0;
        bound_[id] = k == Kind::AX ? 1 : D;
        break;
      case Kind::And:
      case Kind::Or:
      case Kind::AU:
      case Kind::EU:
      case Kind::AR:
      case Kind::ER: {
        input_mask_[id] = input_mask_[a] | input_mask_[b];
        output_mask_[id] = output_mask_[a] | output_mask_[b];
        const bool pa = propositional_[a], pb = propositional_[b];
        auto conj = [&](bool px, std::uint64_t x, bool py, std::uint64_t y) {
          return px ? y : py ? x : sat_mul(x, y);
        };
        auto disj = [&](bool px, std::uint64_t x, bool py, std::uint64_t y) {
          return px ? y : py ? x : sat_add(x, y);
        };
        switch (k) {
          case Kind::And:
            propositional_[id] = pa && pb;
            bound_[id] = conj(pa, bound_[a], pb, bound_[b]);
            break;
          case Kind::Or:
            propositional_[id] = pa && pb;
            bound_[id] = disj(pa, bound_[a], pb, bound_[b]);
            break;
          case Kind::AU:  // b ∨ (a ∧ ∧_d self)
            bound_[id] = disj(pb, bound_[b], false, conj(pa, bound_[a], false, 1));
            break;
          case Kind::EU:  // b ∨ (a ∧ ∨_d self)
            bound_[id] = disj(pb, bound_[b], false, conj(pa, bound_[a], false, D));
            break;
          case Kind::AR:  // b ∧ (a ∨ ∧_d self)
            bound_[id] = conj(pb, bound_[b], false, disj(pa, bound_[a], false, 1));
            break;
          default:  // ER: b ∧ (a ∨ ∨_d self)
            bound_[id] = conj(pb, bound_[b], false, disj(pa, bound_[a], false, D));
            break;
        }
        if (ctl::is_temporal(k)) {
          propositional_[id] = 0;
          slot[id] = 1;
        }
        break;
      }
    }
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (!slot[id]) continue;
    slot_index_[id] = static_cast<int>(slots_.size());
    slots_.push_back(id);
    if (bits_for(bound_[id]) > 31)
      throw ResourceExhausted("transition of subformula " + ctl::render(dag_.at(id)) + " has too many models");
  }
}

UState AlternatingAutomaton::state_for(std::size_t subformula, Letter direction) const {
  return static_cast<UState>(subformula) * directions_ + (direction & input_mask_[subformula]);
}

UState AlternatingAutomaton::initial() const { return state_for(dag_.root(), spec_.initial_input); }

bool AlternatingAutomaton::is_final(UState q) const {
  const Kind k = dag_.kind(subformula_of(q));
  return k == Kind::AU || k == Kind::EU;
}

PBool AlternatingAutomaton::atoms_over_directions(std::size_t target, bool universal) const {
  std::vector<PBool> parts;
  parts.reserve(directions_);
  for (Letter d = 0; d < directions_; ++d) parts.push_back(PBool::atom(target * directions_ + d));
  return universal ? PBool::conj(std::move(parts)) : PBool::disj(std::move(parts));
}

PBool AlternatingAutomaton::delta(std::size_t node, Letter memory, Letter output) const {
  const Kind k = dag_.kind(node);
  switch (k) {
    case Kind::True: return PBool::constant(true);
    case Kind::False: return PBool::constant(false);
    case Kind::Atom:
      if (atom_input_[node] >= 0) return PBool::constant(has_bit(memory, atom_input_[node]));
      return PBool::constant(has_bit(output, atom_output_[node]));
    case Kind::Not: return PBool::constant(delta(dag_.lhs(node), memory, output).is_false());
    case Kind::And: return PBool::conj(delta(dag_.lhs(node), memory, output), delta(dag_.rhs(node), memory, output));
    case Kind::Or: return PBool::disj(delta(dag_.lhs(node), memory, output), delta(dag_.rhs(node), memory, output));
    case Kind::AX: return atoms_over_directions(dag_.lhs(node), true);
    case Kind::EX: return atoms_over_directions(dag_.lhs(node), false);
    case Kind::AU:
    case Kind::EU: {
      auto b = delta(dag_.rhs(node), memory, output);
      if (b.is_true()) return b;
      auto a = delta(dag_.lhs(node), memory, output);
      return PBool::disj(std::move(b), PBool::conj(std::move(a), atoms_over_directions(node, k == Kind::AU)));
    }
    case Kind::AR:
    case Kind::ER: {
      auto b = delta(dag_.rhs(node), memory, output);
      if (b.is_false()) return b;
      auto a = delta(dag_.lhs(node), memory, output);
      return PBool::conj(std::move(b), PBool::disj(std::move(a), atoms_over_directions(node, k == Kind::AR)));
    }
  }
  return PBool::constant(false);
}

PBool AlternatingAutomaton::transition(UState q, Letter output) const {
  return delta(subformula_of(q), memory_of(q), output);
}

Obligation AlternatingAutomaton::obligation_of(std::uint64_t atom) const {
  const std::size_t target = static_cast<std::size_t>(atom / directions_);
  const Letter d = atom % directions_;
  return {state_for(target, d), d};
}

AlternatingAutomaton::Truth AlternatingAutomaton::partial_at(std::size_t node, Letter memory, Letter known,
                                                             Letter output) const {
  using T = Truth;
  const Kind k = dag_.kind(node);
  auto both = [&](bool conj, T x, auto&& rest) {
    if (conj && x == T::False) return T::False;
    if (!conj && x == T::True) return T::True;
    const T y = rest();
    if (conj) {
      if (y == T::False) return T::False;
      return x == T::True && y == T::True ? T::True : T::Unknown;
    }
    if (y == T::True) return T::True;
    return x == T::False && y == T::False ? T::False : T::Unknown;
  };
  switch (k) {
    case Kind::True: return T::True;
    case Kind::False: return T::False;
    case Kind::Atom:
      if (atom_input_[node] >= 0) return has_bit(memory, atom_input_[node]) ? T::True : T::False;
      if (!has_bit(known, atom_output_[node])) return T::Unknown;
      return has_bit(output, atom_output_[node]) ? T::True : T::False;
    case Kind::Not: {
      const T x = partial_at(dag_.lhs(node), memory, known, output);
      return x == T::Unknown ? x : x == T::True ? T::False : T::True;
    }
    case Kind::And:
    case Kind::Or:
      return both(k == Kind::And, partial_at(dag_.lhs(node), memory, known, output),
                  [&] { return partial_at(dag_.rhs(node), memory, known, output); });
    case Kind::AX:
    case Kind::EX: return T::True;
    case Kind::AU:
    case Kind::EU:  // b ∨ a, with the self obligation assumed satisfiable
      return both(false, partial_at(dag_.rhs(node), memory, known, output),
                  [&] { return partial_at(dag_.lhs(node), memory, known, output); });
    case Kind::AR:
    case Kind::ER: return partial_at(dag_.rhs(node), memory, known, output);
  }
  return T::Unknown;
}

AlternatingAutomaton::Truth AlternatingAutomaton::partial(UState q, Letter known, Letter output) const {
  return partial_at(subformula_of(q), memory_of(q), known, output);
}

std::string AlternatingAutomaton::describe(UState q) const {
  const auto psi = subformula_of(q);
  std::string out = ctl::render(dag_.at(psi));
  if (input_mask_[psi] != 0) out += " @" + format_letter(memory_of(q), spec_.inputs);
  return out;
}

std::shared_ptr<const AlternatingAutomaton> ctl_to_alternating(const ctl::Spec& spec) {
  return std::make_shared<const AlternatingAutomaton>(spec);
}

namespace {

class CtlUniversal final : public UniversalAutomaton {
 public:
  explicit CtlUniversal(std::shared_ptr<const AlternatingAutomaton> alt) : alt_(std::move(alt)) {
    layout_.output_bits = alt_->spec().outputs.size();
    layout_.input_bits = alt_->spec().inputs.size();
    for (auto s : alt_->slots()) layout_.field_widths.push_back(bits_for(alt_->model_bound(s)));
  }

  const std::vector<std::string>& inputs() const override { return alt_->spec().inputs; }
  const std::vector<std::string>& outputs() const override { return alt_->spec().outputs; }
  Letter initial_input() const override { return alt_->spec().initial_input; }
  const LetterLayout& layout() const override { return layout_; }
  UState initial() const override { return alt_->initial(); }
  bool is_final(UState q) const override { return alt_->is_final(q); }
  std::string describe(UState q) const override { return alt_->describe(q); }

  std::optional<Obligations> successors(UState q, const AnnotatedOutput& letter) const override {
    const auto psi = alt_->subformula_of(q);
    const int field = alt_->slot_index(psi);
    if (field < 0 || letter.choices.size() != layout_.field_widths.size()) return std::nullopt;
    if ((letter.claimed_input & alt_->input_mask(psi)) != alt_->memory_of(q)) return std::nullopt;
    if (letter.output >> layout_.output_bits || letter.claimed_input >> layout_.input_bits) return std::nullopt;
    const auto& models = models_of(q, letter.output);
    const auto choice = letter.choices[field];
    if (choice >= models.size()) return std::nullopt;
    return models[choice];
  }

  void for_each_letter(std::span<const UState> states, std::string_view prefix,
                       const LetterVisitor& visit) const override {
    Enumeration e{*this, states, prefix, visit, {}, 0, {}, {}, {}, false};
    e.run();
  }

 private:
  using ModelList = std::vector<Obligations>;

  const ModelList& models_of(UState q, Letter output) const {
    const auto psi = alt_->subformula_of(q);
    output &= alt_->output_mask(psi);
    const Key key{q, output};
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    auto models = std::make_unique<ModelList>();
    for (const auto& set : minimal_models(alt_->transition(q, output))) {
      Obligations obs;
      obs.reserve(set.size());
      for (auto atom : set) obs.push_back(alt_->obligation_of(atom));
      models->push_back(std::move(obs));
    }
    const int field = alt_->slot_index(psi);
    if (field >= 0 && models->size() > (std::uint64_t{1} << layout_.field_widths[field]))
      throw InvariantViolation("model count exceeds the field width of " + alt_->describe(q));
    return *cache_.emplace(key, std::move(models)).first->second;
  }

  // One enumeration call: depth-first over output bits (pruned by partial
  // evaluation), then nested loops over choice fields in slot order.
  struct Enumeration {
    const CtlUniversal& u;
    std::span<const UState> states;
    std::string_view prefix;
    const LetterVisitor& visit;

    AnnotatedOutput letter;
    Letter relevant = 0;
    std::vector<const ModelList*> models;
    std::vector<int> state_of_field;
    std::vector<const Obligations*> succ;
    bool stopped = false;

    int forced(std::size_t pos) const {
      if (pos >= prefix.size()) return -1;
      return prefix[pos] == '1' ? 1 : 0;
    }

    void run() {
      const auto& lay = u.layout_;
      if (prefix.size() > lay.width()) return;
      for (char c : prefix)
        if (c != '0' && c != '1') return;
      const AlternatingAutomaton& a = *u.alt_;
      Letter claim_mask = 0, claim = 0;
      state_of_field.assign(lay.field_widths.size(), -1);
      for (std::size_t i = 0; i < states.size(); ++i) {
        const auto psi = a.subformula_of(states[i]);
        const int field = a.slot_index(psi);
        if (field < 0) return;
        const Letter m = a.input_mask(psi);
        if ((claim ^ a.memory_of(states[i])) & m & claim_mask) return;
        claim_mask |= m;
        claim |= a.memory_of(states[i]);
        relevant |= a.output_mask(psi);
        state_of_field[field] = static_cast<int>(i);
      }
      for (std::size_t b = 0; b < lay.input_bits; ++b) {
        const int f = forced(lay.output_bits + b);
        if (has_bit(claim_mask, b)) {
          if (f >= 0 && f != static_cast<int>(has_bit(claim, b))) return;
        } else if (f == 1) {
          claim |= Letter{1} << b;
        }
      }
      letter.claimed_input = claim;
      letter.choices.assign(lay.field_widths.size(), 0);
      models.assign(states.size(), nullptr);
      succ.assign(states.size(), nullptr);
      outputs(0, 0);
    }

    void outputs(std::size_t bit, Letter known) {
      if (stopped) return;
      const auto& lay = u.layout_;
      if (bit == lay.output_bits) {
        for (std::size_t i = 0; i < states.size(); ++i) {
          models[i] = &u.models_of(states[i], letter.output);
          if (models[i]->empty()) return;
        }
        fields(0);
        return;
      }
      const Letter mask = Letter{1} << bit;
      const int f = forced(bit);
      if (!(relevant & mask)) {
        if (f == 1) letter.output |= mask;
        outputs(bit + 1, known);
        letter.output &= ~mask;
        return;
      }
      for (int v = 0; v < 2 && !stopped; ++v) {
        if (f >= 0 && f != v) continue;
        if (v) letter.output |= mask;
        const Letter k2 = known | mask;
        bool dead = false;
        for (auto q : states) {
          if (u.alt_->partial(q, k2, letter.output) == AlternatingAutomaton::Truth::False) {
            dead = true;
            break;
          }
        }
        if (!dead) outputs(bit + 1, k2);
        letter.output &= ~mask;
      }
    }

    void fields(std::size_t field) {
      if (stopped) return;
      const auto& lay = u.layout_;
      if (field == lay.field_widths.size()) {
        if (!visit(letter, succ)) stopped = true;
        return;
      }
      const unsigned width = lay.field_widths[field];
      const std::size_t offset = lay.field_offset(field);
      // Bits of the field pinned by the prefix, big-endian.
      std::uint32_t pin_mask = 0, pin_value = 0;
      for (unsigned b = 0; b < width; ++b) {
        const int f = forced(offset + b);
        if (f < 0) continue;
        const unsigned shift = width - 1 - b;
        pin_mask |= 1U << shift;
        if (f) pin_value |= 1U << shift;
      }
      const int owner = state_of_field[field];
      if (owner < 0) {
        letter.choices[field] = pin_value;
        fields(field + 1);
        letter.choices[field] = 0;
        return;
      }
      const auto& list = *models[owner];
      for (std::uint32_t v = 0; v < list.size() && !stopped; ++v) {
        if ((v & pin_mask) != pin_value) continue;
        letter.choices[field] = v;
        succ[owner] = &list[v];
        fields(field + 1);
      }
      letter.choices[field] = 0;
    }
  };

  std::shared_ptr<const AlternatingAutomaton> alt_;
  LetterLayout layout_;
  mutable std::mutex mu_;
  struct Key {
    UState q;
    Letter output;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.q * 0x9E3779B97F4A7C15ULL ^ k.output); }
  };
  mutable std::unordered_map<Key, std::unique_ptr<ModelList>, KeyHash> cache_;
};

}  // namespace

std::shared_ptr<const UniversalAutomaton> to_universal(std::shared_ptr<const AlternatingAutomaton> alt) {
  return std::make_shared<const CtlUniversal>(std::move(alt));
}

}  // namespace succinct::automata
