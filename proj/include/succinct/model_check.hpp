#pragma once

#include <cstdint>
#include <vector>

#include "succinct/ctl.hpp"
#include "succinct/mealy.hpp"

namespace succinct::ctl {

/// Per-subformula satisfaction sets over the nodes of a Kripke quotient.
struct LabelTable {
  /// Distinct subformulas, children before parents; the last one is the root.
  std::vector<Formula> subformulas;
  /// holds[i][n] != 0 iff node n satisfies subformulas[i].
  std::vector<std::vector<std::uint8_t>> holds;

  bool root_holds(std::uint32_t node = 0) const { return holds.back()[node] != 0; }
};

/// Labels every node of `k` with the subformulas of `f` it satisfies. Atoms
/// are resolved against the machine's declared inputs and outputs; an
/// unknown atom throws ValidationError.
LabelTable label(const mealy::KripkeQuotient& k, const std::vector<std::string>& inputs,
                 const std::vector<std::string>& outputs, const Formula& f);

/// Same, over a prebuilt subformula DAG; holds[i] then refers to dag id i.
/// Lets sweeps label many formulas on many machines without rebuilding.
LabelTable label(const mealy::KripkeQuotient& k, const std::vector<std::string>& inputs,
                 const std::vector<std::string>& outputs, const SubformulaDag& dag);

/// True iff the computation tree of `m` satisfies `f` at its root.
bool check(const mealy::MealyMachine& m, const Formula& f);

}  // namespace succinct::ctl
