#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atld/formula.hpp"
#include "atld/model.hpp"
#include "atld/state_set.hpp"

namespace atld {

// Normative devices compiled into removal updates: behavioural constraints
// (explicit forbidden-state sets) and atomic social laws (allowed-state
// conditions given as formulas).

struct BehaviouralConstraint {
  // (action, agent) -> states where the action is forbidden
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> forbidden;
};

struct AtomicSocialLaw {
  // (action, agent) -> condition under which the action is allowed;
  // missing entries allow the action unconditionally
  std::map<std::pair<std::string, std::string>, FormulaPtr> allowed;
};

// Tags every state with a fresh proposition and returns the removal spec
// with one item per forbidden (state, action, agent). Rejects constraints
// that would empty an availability set: the translation is only faithful
// for reasonable constraints, so the removal guard must never fire.
std::pair<Model, UpdateSpec> eta_to_update(const Model& m,
                                           const BehaviouralConstraint& eta);

// One item (!condition, action, {agent}) per defined entry.
UpdateSpec zeta_to_update(const AtomicSocialLaw& zeta);

// Satisfaction set of [spec]- <<>> G goal on the tagged model.
StateSet check_effective(const Model& m, const BehaviouralConstraint& eta,
                         const FormulaPtr& goal);
// Satisfaction set of [spec]- goal.
StateSet check_effective(const Model& m, const AtomicSocialLaw& zeta,
                         const FormulaPtr& goal);

// JSON codecs: eta as action -> agent -> state list, zeta as
// action -> agent -> formula text.
BehaviouralConstraint parse_eta(const std::string& json_text);
AtomicSocialLaw parse_zeta(const std::string& json_text);

}  // namespace atld
