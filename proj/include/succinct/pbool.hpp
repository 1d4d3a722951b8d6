#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace succinct {

/// Negation-free Boolean formula over opaque atom ids. Constructors fold
/// constants and flatten nested connectives of the same kind.
class PBool {
 public:
  enum class Op : std::uint8_t { False, True, Atom, And, Or };

  PBool();  // true

  static PBool constant(bool value);
  static PBool atom(std::uint64_t id);
  static PBool conj(std::vector<PBool> parts);
  static PBool disj(std::vector<PBool> parts);
  static PBool conj(PBool a, PBool b) { return conj(std::vector<PBool>{std::move(a), std::move(b)}); }
  static PBool disj(PBool a, PBool b) { return disj(std::vector<PBool>{std::move(a), std::move(b)}); }

  Op op() const;
  bool is_true() const { return op() == Op::True; }
  bool is_false() const { return op() == Op::False; }
  std::uint64_t atom_id() const;
  const std::vector<PBool>& parts() const;

  /// `set` must be sorted ascending.
  bool satisfied_by(const std::vector<std::uint64_t>& set) const;
  /// Distinct atoms occurring in the formula, ascending.
  std::vector<std::uint64_t> atoms() const;

  std::string to_string() const;

 private:
  struct Node;
  explicit PBool(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A set of atoms, sorted ascending.
using AtomSet = std::vector<std::uint64_t>;

/// Minimal satisfying sets in canonical order (sets compared
/// lexicographically as ascending sequences).
std::vector<AtomSet> minimal_models(const PBool& f);

/// Every satisfying subset of f's atoms, canonical order. Exponential; for
/// cross-checking only.
std::vector<AtomSet> all_models(const PBool& f);

}  // namespace succinct
