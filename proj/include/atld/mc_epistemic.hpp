#pragma once

#include <string>
#include <vector>

#include "atld/mc_perfect.hpp"
#include "atld/model.hpp"

namespace atld {

// Imperfect-information model checking (ATELD). Strategic modalities use
// subjective uniform-strategy semantics: v satisfies <A> psi when some
// uniform strategy for A works from every state any member of A confuses
// with v. The empty coalition quantifies over all enabled paths.
//
// Strategy enumeration is bounded; exceeding the budget raises BudgetError.

struct EpistemicOptions {
  long strategy_budget = 1000000;
};

StateSet check_epistemic(const Model& m, const FormulaPtr& f,
                         const EpistemicOptions& opts = {},
                         CheckStats* stats = nullptr);

// One row per ordered labelled subformula: the labelling pass record.
// Modality rows carry the availability and observation state of the model
// that the modality produces instead of a satisfaction set.
struct LabelRow {
  std::string formula;            // rendered node (or modality prefix)
  std::string prefix;             // rendered enclosing modalities, "" at top
  bool update_modality = false;
  StateSet sat;                   // empty for modality rows
};

std::vector<LabelRow> label_subformulas(const Model& m, const FormulaPtr& f,
                                        const EpistemicOptions& opts = {});

inline Evaluator epistemic_evaluator(long strategy_budget = 1000000) {
  return [strategy_budget](const Model& m, const FormulaPtr& f) {
    return check_epistemic(m, f, EpistemicOptions{strategy_budget});
  };
}

}  // namespace atld
