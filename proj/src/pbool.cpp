#include "succinct/pbool.hpp"

#include <algorithm>

#include "succinct/error.hpp"

namespace succinct {

struct PBool::Node {
  Op op;
  std::uint64_t atom = 0;
  std::vector<PBool> parts;
};

PBool::PBool() : node_(std::make_shared<const Node>(Node{Op::True, 0, {}})) {}

PBool PBool::constant(bool value) { return PBool(std::make_shared<const Node>(Node{value ? Op::True : Op::False, 0, {}})); }

PBool PBool::atom(std::uint64_t id) { return PBool(std::make_shared<const Node>(Node{Op::Atom, id, {}})); }

PBool PBool::conj(std::vector<PBool> parts) {
  std::vector<PBool> flat;
  for (auto& p : parts) {
    if (p.is_false()) return constant(false);
    if (p.is_true()) continue;
    if (p.op() == Op::And) {
      flat.insert(flat.end(), p.parts().begin(), p.parts().end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return constant(true);
  if (flat.size() == 1) return flat.front();
  return PBool(std::make_shared<const Node>(Node{Op::And, 0, std::move(flat)}));
}

PBool PBool::disj(std::vector<PBool> parts) {
  std::vector<PBool> flat;
  for (auto& p : parts) {
    if (p.is_true()) return constant(true);
    if (p.is_false()) continue;
    if (p.op() == Op::Or) {
      flat.insert(flat.end(), p.parts().begin(), p.parts().end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return constant(false);
  if (flat.size() == 1) return flat.front();
  return PBool(std::make_shared<const Node>(Node{Op::Or, 0, std::move(flat)}));
}

PBool::Op PBool::op() const { return node_->op; }
std::uint64_t PBool::atom_id() const { return node_->atom; }
const std::vector<PBool>& PBool::parts() const { return node_->parts; }

bool PBool::satisfied_by(const std::vector<std::uint64_t>& set) const {
  switch (op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return std::binary_search(set.begin(), set.end(), atom_id());
    case Op::And:
      return std::all_of(parts().begin(), parts().end(), [&](const PBool& p) { return p.satisfied_by(set); });
    case Op::Or:
      return std::any_of(parts().begin(), parts().end(), [&](const PBool& p) { return p.satisfied_by(set); });
  }
  return false;
}

std::vector<std::uint64_t> PBool::atoms() const {
  std::vector<std::uint64_t> out;
  auto walk = [&](auto&& self, const PBool& f) -> void {
    if (f.op() == Op::Atom) out.push_back(f.atom_id());
    for (const auto& p : f.parts()) self(self, p);
  };
  walk(walk, *this);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string PBool::to_string() const {
  switch (op()) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return "a" + std::to_string(atom_id());
    default: break;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < parts().size(); ++i) {
    if (i) out += op() == Op::And ? " & " : " | ";
    out += parts()[i].to_string();
  }
  return out + ")";
}

namespace {

void minimize(std::vector<AtomSet>& sets) {
  std::sort(sets.begin(), sets.end(), [](const AtomSet& a, const AtomSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<AtomSet> kept;
  for (auto& s : sets) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const AtomSet& k) {
      return std::includes(s.begin(), s.end(), k.begin(), k.end());
    });
    if (!covered) kept.push_back(std::move(s));
  }
  std::sort(kept.begin(), kept.end());
  sets = std::move(kept);
}

std::vector<AtomSet> models(const PBool& f) {
  using Op = PBool::Op;
  switch (f.op()) {
    case Op::True: return {AtomSet{}};
    case Op::False: return {};
    case Op::Atom: return {AtomSet{f.atom_id()}};
    case Op::Or: {
      std::vector<AtomSet> out;
      for (const auto& p : f.parts()) {
        auto m = models(p);
        out.insert(out.end(), std::make_move_iterator(m.begin()), std::make_move_iterator(m.end()));
      }
      minimize(out);
      return out;
    }
    case Op::And: {
      std::vector<AtomSet> acc{AtomSet{}};
      for (const auto& p : f.parts()) {
        auto m = models(p);
        std::vector<AtomSet> next;
        next.reserve(acc.size() * m.size());
        for (const auto& a : acc)
          for (const auto& b : m) {
            AtomSet u;
            std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
            next.push_back(std::move(u));
          }
        minimize(next);
        acc = std::move(next);
        if (acc.empty()) break;
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

std::vector<AtomSet> minimal_models(const PBool& f) { return models(f); }

std::vector<AtomSet> all_models(const PBool& f) {
  const auto atoms = f.atoms();
  if (atoms.size() > 24) throw ResourceExhausted("all_models: too many atoms");
  std::vector<AtomSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
    AtomSet s;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((mask >> i) & 1U) s.push_back(atoms[i]);
    if (f.satisfied_by(s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace succinct
