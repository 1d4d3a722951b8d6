#include "succinct/ctl.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "succinct/error.hpp"

namespace succinct::ctl {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> kids;
};

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: return "atom";
    case Kind::Not: return "!";
    case Kind::And: return "&";
    case Kind::Or: return "|";
    case Kind::AX: return "AX";
    case Kind::EX: return "EX";
    case Kind::AU: return "AU";
    case Kind::EU: return "EU";
    case Kind::AR: return "AR";
    case Kind::ER: return "ER";
  }
  return "?";
}

std::size_t arity(Kind k) {
  switch (k) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom: return 0;
    case Kind::Not:
    case Kind::AX:
    case Kind::EX: return 1;
    default: return 2;
  }
}

bool is_temporal(Kind k) {
  switch (k) {
    case Kind::AX:
    case Kind::EX:
    case Kind::AU:
    case Kind::EU:
    case Kind::AR:
    case Kind::ER: return true;
    default: return false;
  }
}

Formula::Formula() : node_(std::make_shared<const Node>(Node{Kind::True, {}, {}})) {}

Formula Formula::top() { return Formula(); }

Formula Formula::bottom() {
  return Formula(std::make_shared<const Node>(Node{Kind::False, {}, {}}));
}

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}}));
}

Formula Formula::make(Kind k, Formula a, Formula b) {
  switch (arity(k)) {
    case 0:
      if (k == Kind::True) return top();
      if (k == Kind::False) return bottom();
      throw ContractViolation("Formula::make cannot build atoms; use Formula::atom");
    case 1: return Formula(std::make_shared<const Node>(Node{k, {}, {std::move(a)}}));
    default:
      return Formula(std::make_shared<const Node>(Node{k, {}, {std::move(a), std::move(b)}}));
  }
}

Formula Formula::neg(Formula f) { return make(Kind::Not, std::move(f)); }
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, std::move(a), std::move(b)); }
Formula Formula::ax(Formula f) { return make(Kind::AX, std::move(f)); }
Formula Formula::ex(Formula f) { return make(Kind::EX, std::move(f)); }
Formula Formula::au(Formula a, Formula b) { return make(Kind::AU, std::move(a), std::move(b)); }
Formula Formula::eu(Formula a, Formula b) { return make(Kind::EU, std::move(a), std::move(b)); }
Formula Formula::ar(Formula a, Formula b) { return make(Kind::AR, std::move(a), std::move(b)); }
Formula Formula::er(Formula a, Formula b) { return make(Kind::ER, std::move(a), std::move(b)); }

Formula Formula::iff(const Formula& a, const Formula& b) {
  return conj(implies(a, b), implies(b, a));
}

Formula Formula::all(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::any(const std::vector<Formula>& parts) {
  if (parts.empty()) return bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }

const Formula& Formula::lhs() const {
  if (node_->kids.empty())
    throw ContractViolation(std::string("formula kind ") + kind_name(kind()) + " has no operand");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (node_->kids.size() < 2)
    throw ContractViolation(std::string("formula kind ") + kind_name(kind()) + " has no second operand");
  return node_->kids[1];
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  return node_->kind == other.node_->kind && node_->name == other.node_->name &&
         node_->kids == other.node_->kids;
}

SubformulaDag::SubformulaDag(const Formula& root) { add(root); }

std::size_t SubformulaDag::add(const Formula& f) {
  if (auto it = seen_.find(f.identity()); it != seen_.end()) return it->second;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::array<std::size_t, 2> kids{none, none};
  const auto n = arity(f.kind());
  if (n >= 1) kids[0] = add(f.lhs());
  if (n == 2) kids[1] = add(f.rhs());
  const auto key = std::make_tuple(static_cast<int>(f.kind()), f.kind() == Kind::Atom ? f.name() : std::string(),
                                   kids[0], kids[1]);
  auto [it, fresh] = ids_.emplace(key, nodes_.size());
  if (fresh) {
    nodes_.push_back(f);
    kids_.push_back(kids);
  }
  seen_.emplace(f.identity(), it->second);
  return it->second;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  const auto k = arity(f.kind());
  if (k >= 1) n += formula_size(f.lhs());
  if (k == 2) n += formula_size(f.rhs());
  return n;
}

namespace {

Formula nnf(const Formula& f, bool negated) {
  using K = Kind;
  switch (f.kind()) {
    case K::True: return negated ? Formula::bottom() : Formula::top();
    case K::False: return negated ? Formula::top() : Formula::bottom();
    case K::Atom: return negated ? Formula::neg(f) : f;
    case K::Not: return nnf(f.child(), !negated);
    case K::And:
      return Formula::make(negated ? K::Or : K::And, nnf(f.lhs(), negated), nnf(f.rhs(), negated));
    case K::Or:
      return Formula::make(negated ? K::And : K::Or, nnf(f.lhs(), negated), nnf(f.rhs(), negated));
    case K::AX: return Formula::make(negated ? K::EX : K::AX, nnf(f.child(), negated));
    case K::EX: return Formula::make(negated ? K::AX : K::EX, nnf(f.child(), negated));
    // ¬A(a U b) ≡ E(¬a R ¬b) and the other three dualities.
    case K::AU: return Formula::make(negated ? K::ER : K::AU, nnf(f.lhs(), negated), nnf(f.rhs(), negated));
    case K::EU: return Formula::make(negated ? K::AR : K::EU, nnf(f.lhs(), negated), nnf(f.rhs(), negated));
    case K::AR: return Formula::make(negated ? K::EU : K::AR, nnf(f.lhs(), negated), nnf(f.rhs(), negated));
    case K::ER: return Formula::make(negated ? K::AU : K::ER, nnf(f.lhs(), negated), nnf(f.rhs(), negated));
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  if (f.kind() == Kind::Not) return f.child().kind() == Kind::Atom;
  const auto k = arity(f.kind());
  if (k >= 1 && !is_nnf(f.lhs())) return false;
  return k < 2 || is_nnf(f.rhs());
}

std::string render(const Formula& f) {
  using K = Kind;
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return f.name();
    case K::Not: return "!" + render(f.child());
    case K::And: return "(" + render(f.lhs()) + " & " + render(f.rhs()) + ")";
    case K::Or: return "(" + render(f.lhs()) + " | " + render(f.rhs()) + ")";
    case K::AX: return "AX " + render(f.child());
    case K::EX: return "EX " + render(f.child());
    case K::AU: return "A(" + render(f.lhs()) + " U " + render(f.rhs()) + ")";
    case K::EU: return "E(" + render(f.lhs()) + " U " + render(f.rhs()) + ")";
    case K::AR: return "A(" + render(f.lhs()) + " R " + render(f.rhs()) + ")";
    case K::ER: return "E(" + render(f.lhs()) + " R " + render(f.rhs()) + ")";
  }
  return "?";
}

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string render(const Spec& spec) {
  std::string out = "inputs " + join(spec.inputs) + ";\n";
  out += "outputs " + join(spec.outputs) + ";\n";
  if (spec.initial_input != 0) {
    std::vector<std::string> init;
    for (std::size_t i = 0; i < spec.inputs.size(); ++i)
      if (has_bit(spec.initial_input, i)) init.push_back(spec.inputs[i]);
    out += "init {" + join(init) + "};\n";
  }
  out += render(spec.formula) + "\n";
  return out;
}

std::vector<std::string> atoms_of(const Formula& f) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Kind::Atom) {
      if (std::find(out.begin(), out.end(), g.name()) == out.end()) out.push_back(g.name());
      return;
    }
    const auto k = arity(g.kind());
    if (k >= 1) walk(g.lhs());
    if (k == 2) walk(g.rhs());
  };
  walk(f);
  return out;
}

void validate(const Spec& spec) {
  std::set<std::string> seen;
  for (const auto& p : spec.inputs) {
    if (!seen.insert(p).second) throw ValidationError("duplicate proposition '" + p + "'");
  }
  for (const auto& p : spec.outputs) {
    if (!seen.insert(p).second) {
      if (std::find(spec.inputs.begin(), spec.inputs.end(), p) != spec.inputs.end())
        throw ValidationError("proposition '" + p + "' declared as both input and output");
      throw ValidationError("duplicate proposition '" + p + "'");
    }
  }
  if (spec.inputs.size() > kMaxPropositions || spec.outputs.size() > kMaxPropositions)
    throw ValidationError("too many propositions (limit " + std::to_string(kMaxPropositions) + ")");
  if (spec.initial_input >> spec.inputs.size())
    throw ValidationError("initial input letter uses undeclared input bits");
  for (const auto& a : atoms_of(spec.formula)) {
    if (!seen.count(a)) throw ValidationError("undeclared proposition '" + a + "'");
  }
}

}  // namespace succinct::ctl
