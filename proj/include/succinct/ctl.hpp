#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "succinct/letter.hpp"

namespace succinct::ctl {

enum class Kind { True, False, Atom, Not, And, Or, AX, EX, AU, EU, AR, ER };

enum class Role { Input, Output };

struct Proposition {
  std::string name;
  Role role;
};

const char* kind_name(Kind k);
std::size_t arity(Kind k);
bool is_temporal(Kind k);

/// Immutable CTL parse tree. Copies share structure.
class Formula {
 public:
  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula ax(Formula f);
  static Formula ex(Formula f);
  static Formula au(Formula a, Formula b);
  static Formula eu(Formula a, Formula b);
  static Formula ar(Formula a, Formula b);
  static Formula er(Formula a, Formula b);
  static Formula make(Kind k, Formula a = {}, Formula b = {});

  // Sugar, expanded into the kernel on construction.
  static Formula ag(Formula f) { return ar(bottom(), std::move(f)); }
  static Formula af(Formula f) { return au(top(), std::move(f)); }
  static Formula eg(Formula f) { return er(bottom(), std::move(f)); }
  static Formula ef(Formula f) { return eu(top(), std::move(f)); }
  static Formula implies(Formula a, Formula b) { return disj(neg(std::move(a)), std::move(b)); }
  static Formula iff(const Formula& a, const Formula& b);
  /// Conjunction of all parts; `true` when empty.
  static Formula all(const std::vector<Formula>& parts);
  static Formula any(const std::vector<Formula>& parts);

  Kind kind() const;
  /// Proposition name; only meaningful for atoms.
  const std::string& name() const;
  /// First operand (the only one for unary kinds).
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& child() const { return lhs(); }

  /// Address of the shared node; equal for copies of the same value.
  const void* identity() const { return node_.get(); }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A formula together with its proposition declarations.
struct Spec {
  Formula formula;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  /// Subset of `inputs`, bit i = inputs[i].
  Letter initial_input = 0;

  bool operator==(const Spec&) const = default;
};

/// Hash-consed view of a formula: structurally equal subformulas share one
/// id, and children always get smaller ids than their parents.
class SubformulaDag {
 public:
  explicit SubformulaDag(const Formula& root);

  std::size_t size() const { return nodes_.size(); }
  std::size_t root() const { return nodes_.size() - 1; }
  const Formula& at(std::size_t id) const { return nodes_[id]; }
  Kind kind(std::size_t id) const { return nodes_[id].kind(); }
  std::size_t lhs(std::size_t id) const { return kids_[id][0]; }
  std::size_t rhs(std::size_t id) const { return kids_[id][1]; }
  /// Id of a node object reachable from the root, by identity.
  std::optional<std::size_t> find(const Formula& f) const {
    auto it = seen_.find(f.identity());
    if (it == seen_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::size_t add(const Formula& f);

  std::vector<Formula> nodes_;
  std::vector<std::array<std::size_t, 2>> kids_;
  std::map<std::tuple<int, std::string, std::size_t, std::size_t>, std::size_t> ids_;
  std::unordered_map<const void*, std::size_t> seen_;
};

/// Node count of the parse tree.
std::size_t formula_size(const Formula& f);

/// Negation normal form: negations only directly above atoms, `true`/`false`
/// folded under negation.
Formula to_nnf(const Formula& f);
bool is_nnf(const Formula& f);

/// Kernel syntax; parse_formula(render(f)) reproduces f exactly.
std::string render(const Formula& f);
/// Full spec file text.
std::string render(const Spec& spec);

/// Parses a spec file (header lines then one formula). Throws ParseError
/// with line/column on syntax errors and ValidationError on declaration
/// problems (undeclared proposition, input/output overlap, duplicates).
Spec parse_spec(std::string_view text);

/// Parses a bare formula against the declarations of `decls`.
Formula parse_formula(std::string_view text, const Spec& decls);

/// Checks disjointness, uniqueness, init ⊆ inputs and that every atom is
/// declared. Throws ValidationError.
void validate(const Spec& spec);

/// Names of all atoms occurring in f (with repetitions removed, in first
/// occurrence order).
std::vector<std::string> atoms_of(const Formula& f);

}  // namespace succinct::ctl
