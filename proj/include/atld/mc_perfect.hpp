#pragma once

#include "atld/formula.hpp"
#include "atld/model.hpp"
#include "atld/state_set.hpp"

namespace atld {

struct CheckStats {
  long pre_calls = 0;
  int models_built = 0;  // updated models constructed during the run
};

// One-step coalition controllability: the states from which the coalition
// can force the next state into `target`, over available actions only.
// An empty coalition quantifies universally over all agents.
StateSet pre(const Model& m, const std::vector<int>& coalition,
             const StateSet& target, CheckStats* stats = nullptr);

// Global ATLD model checking by fixpoints. Rejects Knows and non-empty
// informed sets.
StateSet check(const Model& m, const FormulaPtr& f, CheckStats* stats = nullptr);

// Direct-semantics oracle: strategic modalities by exhaustive enumeration
// of availability-respecting memoryless strategies and path analysis on
// the pruned graph. Budget bounds the strategies tried per modality.
StateSet reference_check(const Model& m, const FormulaPtr& f,
                         long strategy_budget = 1000000);

inline Evaluator perfect_evaluator() {
  return [](const Model& m, const FormulaPtr& f) { return check(m, f); };
}

}  // namespace atld
