#pragma once

#include <array>
#include <string>
#include <vector>

#include "atld/formula.hpp"
#include "atld/model.hpp"

namespace atld {

// Bounded update existence: search for a sequence of at most n updates,
// drawn from a finite candidate pool, that makes a goal hold at a state.
// Completeness is relative to the pool.

struct CandidatePool {
  std::vector<FormulaPtr> preconditions;
  std::vector<std::string> actions;
  std::vector<std::vector<std::string>> coalitions;  // item target sets
  std::vector<Sign> signs;
  int max_items_per_update = 0;  // 0: |actions|*|coalitions|*|preconditions|, capped at 16
  int max_sequence_length = 1;
};

// True-or-literal preconditions over every proposition, every action,
// singleton targets, both signs.
CandidatePool default_pool(const Model& m);

struct SolveOptions {
  long candidate_budget = 1000000;  // sequences evaluated before BudgetError
  bool epistemic = false;
  long strategy_budget = 1000000;   // epistemic engine budget
  int jobs = 1;
};

struct SolveResult {
  bool found = false;
  std::vector<UpdateSpec> sequence;  // empty sequence is a legal certificate
  long candidates_tried = 0;
};

// First certificate in deterministic order: by sequence length, then
// lexicographically over canonical update encodings (fewer items first).
// Certificates are re-verified by applying the updates and re-checking the
// goal before being returned.
SolveResult solve_bounded(const Model& m, int state, const FormulaPtr& goal,
                          const CandidatePool& pool, const SolveOptions& opts = {});

// --- 3SAT reduction -------------------------------------------------------

struct CnfInstance {
  int num_atoms = 0;
  // 1-based atom indices, negative for negated literals; exactly 3 per
  // clause (shorter clauses are padded by repetition on input)
  std::vector<std::array<int, 3>> clauses;
};

CnfInstance parse_dimacs(const std::string& text);
std::string to_dimacs(const CnfInstance& cnf);

bool brute_sat(const CnfInstance& cnf);  // exhaustive; at most 20 atoms

struct Reduction {
  Model model;
  FormulaPtr goal;
  std::string start_state;
};

// Single-agent game where a grant update encodes a truth assignment: the
// goal forces one literal per clause whose atom state reaches its matching
// truth-value state and not the opposite one.
Reduction gen_3sat(const CnfInstance& cnf);

// Atom propositions x {alpha, beta} x {{a}} x {+}, single update.
CandidatePool reduction_pool(const CnfInstance& cnf);

}  // namespace atld
