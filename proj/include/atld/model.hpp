#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "atld/formula.hpp"
#include "atld/state_set.hpp"

namespace atld {

// Concurrent game structure, optionally with observation partitions
// (iCGS). Transitions are total over Act^Ag; availability picks out the
// enabled ones. Models are immutable values once built; every update
// operation returns a fresh model.
struct Model {
  std::vector<std::string> agents;
  std::vector<std::string> actions;        // at most 64
  std::vector<std::string> propositions;
  std::vector<std::string> states;

  std::vector<StateSet> labelling;          // per proposition
  std::vector<std::vector<uint64_t>> avail; // [agent][state]: action mask
  std::vector<int> trans;                   // [state * profile_count + profile]
  // Observation partition per agent as a representative map; identity
  // unless set otherwise (perfect information).
  std::vector<std::vector<int>> obs;        // [agent][state] -> block rep

  long profile_count = 1;

  int num_agents() const { return (int)agents.size(); }
  int num_actions() const { return (int)actions.size(); }
  int num_states() const { return (int)states.size(); }

  int agent_index(const std::string& name) const;
  int action_index(const std::string& name) const;
  int prop_index(const std::string& name) const;   // -1 when absent
  int state_index(const std::string& name) const;

  // Profile encoding: sum over agents of action * |Act|^agent.
  long profile_of(const std::vector<int>& actions_per_agent) const;
  int successor(int state, long profile) const { return trans[state * profile_count + profile]; }

  bool available(int agent, int state, int action) const {
    return (avail[agent][state] >> action) & 1;
  }
  std::vector<int> available_actions(int agent, int state) const;
  bool labelled(int state, int prop) const { return labelling[prop].contains(state); }

  // |V| + sum |True(v)| + |d| + |o|
  long size() const;

  // Call after filling in the id vectors; builds the lookup tables and
  // allocates labelling/avail/obs/trans with defaults (empty labels, empty
  // availability, identity observations, self-loop transitions).
  void init_shape();

  // Canonicalize obs representatives (min state index per block).
  void normalize_obs();

 private:
  std::unordered_map<std::string, int> agent_idx_, action_idx_, prop_idx_, state_idx_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

ValidationReport validate(const Model& m);

// Resolves a formula to its satisfaction set in a given model. The model
// checkers provide these; model update operations only need the callback.
using Evaluator = std::function<StateSet(const Model&, const FormulaPtr&)>;

// upd^pi(agent, state): actions named by items whose precondition holds at
// `state` and whose target set contains `agent`. Returned as an action mask.
uint64_t upd_set(const Model& m, const UpdateSpec& spec, int agent, int state,
                 const Evaluator& eval);

// Grant/removal updates on availability. Labels, transitions, and observations are
// untouched; removal is guarded by reasonableness per (agent, state).
Model apply_grant(const Model& m, const UpdateSpec& spec, const Evaluator& eval);
Model apply_remove(const Model& m, const UpdateSpec& spec, const Evaluator& eval);

// Lower-level variants with precondition satisfaction sets already known
// (one per item, evaluated in `m`).
Model apply_grant_sets(const Model& m, const UpdateSpec& spec,
                       const std::vector<StateSet>& pre_sats);
Model apply_remove_sets(const Model& m, const UpdateSpec& spec,
                        const std::vector<StateSet>& pre_sats);

// Epistemic update: availability as above plus observation refinement by each
// item's precondition partition for every agent in targets + informed. The
// refinement applies even when the availability change is vacuous.
Model apply_epistemic(const Model& m, const UpdateSpec& spec, const Evaluator& eval);
Model apply_epistemic_sets(const Model& m, const UpdateSpec& spec,
                           const std::vector<StateSet>& pre_sats);

// G+ construction: one fresh proposition per state, true only there.
// Fresh names use the reserved "@state:" prefix (then "@state2:", ... if
// the model was tagged before).
Model tag_states(const Model& m);

}  // namespace atld
