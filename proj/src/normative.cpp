#include "atld/normative.hpp"

#include <json.hpp>

#include "atld/errors.hpp"
#include "atld/mc_perfect.hpp"

namespace atld {

std::pair<Model, UpdateSpec> eta_to_update(const Model& m,
                                           const BehaviouralConstraint& eta) {
  // name checks + translation-time reasonableness
  std::vector<std::vector<uint64_t>> drop(m.num_agents(),
                                          std::vector<uint64_t>(m.num_states(), 0));
  for (const auto& [key, states] : eta.forbidden) {
    int act = m.action_index(key.first);
    int ag = m.agent_index(key.second);
    for (const auto& s : states) drop[ag][m.state_index(s)] |= 1ull << act;
  }
  for (int a = 0; a < m.num_agents(); ++a)
    for (int v = 0; v < m.num_states(); ++v)
      if ((m.avail[a][v] & ~drop[a][v]) == 0)
        throw InputError("behavioural constraint empties d(" + m.agents[a] +
                         ", " + m.states[v] + ")");

  Model tagged = tag_states(m);
  int base = (int)m.propositions.size();  // tag props follow the originals

  UpdateSpec spec;
  spec.sign = Sign::Remove;
  for (const auto& [key, states] : eta.forbidden)
    for (const auto& s : states) {
      UpdateItem item;
      item.precondition = f_prop(tagged.propositions[base + m.state_index(s)]);
      item.action = key.first;
      item.targets = {key.second};
      spec.items.push_back(item);
    }
  return {std::move(tagged), std::move(spec)};
}

UpdateSpec zeta_to_update(const AtomicSocialLaw& zeta) {
  UpdateSpec spec;
  spec.sign = Sign::Remove;
  for (const auto& [key, cond] : zeta.allowed) {
    UpdateItem item;
    item.precondition = f_not(cond);
    item.action = key.first;
    item.targets = {key.second};
    spec.items.push_back(item);
  }
  return spec;
}

StateSet check_effective(const Model& m, const BehaviouralConstraint& eta,
                         const FormulaPtr& goal) {
  auto [tagged, spec] = eta_to_update(m, eta);
  FormulaPtr f = f_globally({}, goal);
  if (!spec.items.empty()) f = f_update(spec, f);
  return check(tagged, f);
}

StateSet check_effective(const Model& m, const AtomicSocialLaw& zeta,
                         const FormulaPtr& goal) {
  UpdateSpec spec = zeta_to_update(zeta);
  FormulaPtr f = spec.items.empty() ? goal : f_update(spec, goal);
  return check(m, f);
}

namespace {

nlohmann::json parse_json(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON");
  return j;
}

}  // namespace

BehaviouralConstraint parse_eta(const std::string& json_text) {
  BehaviouralConstraint eta;
  auto j = parse_json(json_text);
  if (!j.is_object()) throw InputError("eta: expected object action -> agent -> states");
  for (auto& [action, per_agent] : j.items()) {
    if (!per_agent.is_object()) throw InputError("eta: expected agent map under " + action);
    for (auto& [agent, states] : per_agent.items()) {
      if (!states.is_array()) throw InputError("eta: expected state list for " + agent);
      auto& out = eta.forbidden[{action, agent}];
      for (auto& s : states) out.push_back(s.get<std::string>());
    }
  }
  return eta;
}

AtomicSocialLaw parse_zeta(const std::string& json_text) {
  AtomicSocialLaw zeta;
  auto j = parse_json(json_text);
  if (!j.is_object()) throw InputError("zeta: expected object action -> agent -> formula");
  for (auto& [action, per_agent] : j.items()) {
    if (!per_agent.is_object()) throw InputError("zeta: expected agent map under " + action);
    for (auto& [agent, text] : per_agent.items())
      zeta.allowed[{action, agent}] = parse_formula(text.get<std::string>());
  }
  return zeta;
}

}  // namespace atld
