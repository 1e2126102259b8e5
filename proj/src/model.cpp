#include "atld/model.hpp"

#include <algorithm>

#include "atld/errors.hpp"

namespace atld {

namespace {

int lookup(const std::unordered_map<std::string, int>& m, const std::string& k,
           const char* what) {
  auto it = m.find(k);
  if (it == m.end()) throw InputError(std::string("unknown ") + what + " '" + k + "'");
  return it->second;
}

void check_index_maps(const std::vector<std::string>& names, const char* what) {
  std::unordered_map<std::string, int> seen;
  for (const auto& n : names)
    if (!seen.emplace(n, 1).second)
      throw InputError(std::string("duplicate ") + what + " '" + n + "'");
}

}  // namespace

int Model::agent_index(const std::string& name) const {
  return lookup(agent_idx_, name, "agent");
}
int Model::action_index(const std::string& name) const {
  return lookup(action_idx_, name, "action");
}
int Model::prop_index(const std::string& name) const {
  auto it = prop_idx_.find(name);
  return it == prop_idx_.end() ? -1 : it->second;
}
int Model::state_index(const std::string& name) const {
  return lookup(state_idx_, name, "state");
}

long Model::profile_of(const std::vector<int>& acts) const {
  long p = 0;
  long radix = 1;
  for (int a = 0; a < num_agents(); ++a) {
    p += acts[a] * radix;
    radix *= num_actions();
  }
  return p;
}

std::vector<int> Model::available_actions(int agent, int state) const {
  std::vector<int> out;
  uint64_t mask = avail[agent][state];
  while (mask) {
    int a = __builtin_ctzll(mask);
    out.push_back(a);
    mask &= mask - 1;
  }
  return out;
}

long Model::size() const {
  long s = num_states();
  for (const auto& ss : labelling) s += ss.count();
  for (const auto& row : avail)
    for (uint64_t mask : row) s += __builtin_popcountll(mask);
  s += (long)trans.size();
  return s;
}

void Model::init_shape() {
  if (num_actions() > 64) throw InputError("more than 64 actions");
  check_index_maps(agents, "agent");
  check_index_maps(actions, "action");
  check_index_maps(propositions, "proposition");
  check_index_maps(states, "state");
  agent_idx_.clear(); action_idx_.clear(); prop_idx_.clear(); state_idx_.clear();
  for (int i = 0; i < (int)agents.size(); ++i) agent_idx_[agents[i]] = i;
  for (int i = 0; i < (int)actions.size(); ++i) action_idx_[actions[i]] = i;
  for (int i = 0; i < (int)propositions.size(); ++i) prop_idx_[propositions[i]] = i;
  for (int i = 0; i < (int)states.size(); ++i) state_idx_[states[i]] = i;

  profile_count = 1;
  for (int a = 0; a < num_agents(); ++a) {
    profile_count *= num_actions();
    if (profile_count > (1L << 26))
      throw InputError("joint action space too large");
  }

  labelling.assign(propositions.size(), StateSet(num_states()));
  avail.assign(num_agents(), std::vector<uint64_t>(num_states(), 0));
  obs.assign(num_agents(), std::vector<int>(num_states()));
  for (auto& row : obs)
    for (int v = 0; v < num_states(); ++v) row[v] = v;
  trans.assign((size_t)num_states() * profile_count, 0);
  for (int v = 0; v < num_states(); ++v)
    for (long p = 0; p < profile_count; ++p) trans[v * profile_count + p] = v;
}

void Model::normalize_obs() {
  for (auto& row : obs) {
    // representative := min member of the block
    std::vector<int> rep(num_states(), -1);
    for (int v = 0; v < num_states(); ++v) {
      int r = row[v];
      if (rep[r] < 0 || v < rep[r]) rep[r] = std::min(v, rep[r] < 0 ? v : rep[r]);
    }
    for (int v = 0; v < num_states(); ++v) {
      int r = row[v];
      if (rep[r] < 0) rep[r] = v;
      row[v] = rep[r];
    }
  }
}

ValidationReport validate(const Model& m) {
  ValidationReport rep;
  auto flag = [&](std::string s) {
    rep.ok = false;
    rep.violations.push_back(std::move(s));
  };

  for (int a = 0; a < m.num_agents(); ++a)
    for (int v = 0; v < m.num_states(); ++v)
      if (m.avail[a][v] == 0)
        flag("empty availability at (" + m.agents[a] + "," + m.states[v] + ")");

  if ((long)m.trans.size() != (long)m.num_states() * m.profile_count)
    flag("transition table is not total");
  for (int t : m.trans)
    if (t < 0 || t >= m.num_states()) {
      flag("transition target out of range");
      break;
    }

  for (int a = 0; a < m.num_agents(); ++a) {
    // rep map must be idempotent, i.e. encode a genuine partition
    for (int v = 0; v < m.num_states(); ++v) {
      int r = m.obs[a][v];
      if (r < 0 || r >= m.num_states() || m.obs[a][r] != r) {
        flag("observations of " + m.agents[a] + " are not a partition");
        break;
      }
    }
    for (int v = 0; v < m.num_states(); ++v) {
      int r = m.obs[a][v];
      if (m.avail[a][v] != m.avail[a][r]) {
        flag("availability not uniform on observation block of " + m.agents[a] +
             " containing " + m.states[v]);
        break;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Updates

namespace {

// Per-item precondition sets, evaluated in the pre-update model.
std::vector<StateSet> eval_items(const Model& m, const UpdateSpec& spec,
                                 const Evaluator& eval) {
  std::vector<StateSet> sats;
  sats.reserve(spec.items.size());
  for (const auto& it : spec.items) sats.push_back(eval(m, it.precondition));
  return sats;
}

// upd^pi as an action mask, aggregated over all items.
uint64_t upd_mask(const Model& m, const UpdateSpec& spec,
                  const std::vector<StateSet>& sats, int agent, int state) {
  uint64_t mask = 0;
  for (size_t i = 0; i < spec.items.size(); ++i) {
    const auto& it = spec.items[i];
    if (!sats[i].contains(state)) continue;
    bool targeted = false;
    for (const auto& t : it.targets)
      if (m.agent_index(t) == agent) targeted = true;
    if (targeted) mask |= uint64_t{1} << m.action_index(it.action);
  }
  return mask;
}

void check_spec_ids(const Model& m, const UpdateSpec& spec) {
  for (const auto& it : spec.items) {
    m.action_index(it.action);
    for (const auto& a : it.targets) m.agent_index(a);
    for (const auto& a : it.informed) m.agent_index(a);
  }
}

}  // namespace

uint64_t upd_set(const Model& m, const UpdateSpec& spec, int agent, int state,
                 const Evaluator& eval) {
  check_spec_ids(m, spec);
  return upd_mask(m, spec, eval_items(m, spec, eval), agent, state);
}

Model apply_grant_sets(const Model& m, const UpdateSpec& spec,
                       const std::vector<StateSet>& sats) {
  check_spec_ids(m, spec);
  if (spec.sign != Sign::Grant) throw InputError("apply_grant on a remove spec");
  Model out = m;
  for (int a = 0; a < m.num_agents(); ++a)
    for (int v = 0; v < m.num_states(); ++v)
      out.avail[a][v] |= upd_mask(m, spec, sats, a, v);
  return out;
}

Model apply_remove_sets(const Model& m, const UpdateSpec& spec,
                        const std::vector<StateSet>& sats) {
  check_spec_ids(m, spec);
  if (spec.sign != Sign::Remove) throw InputError("apply_remove on a grant spec");
  Model out = m;
  for (int a = 0; a < m.num_agents(); ++a)
    for (int v = 0; v < m.num_states(); ++v) {
      uint64_t drop = upd_mask(m, spec, sats, a, v);
      // reasonableness: keep everything rather than empty the set
      if (m.avail[a][v] & ~drop) out.avail[a][v] = m.avail[a][v] & ~drop;
    }
  return out;
}

Model apply_grant(const Model& m, const UpdateSpec& spec, const Evaluator& eval) {
  return apply_grant_sets(m, spec, eval_items(m, spec, eval));
}

Model apply_remove(const Model& m, const UpdateSpec& spec, const Evaluator& eval) {
  return apply_remove_sets(m, spec, eval_items(m, spec, eval));
}

Model apply_epistemic_sets(const Model& m, const UpdateSpec& spec,
                           const std::vector<StateSet>& sats) {
  Model out = spec.sign == Sign::Grant ? apply_grant_sets(m, spec, sats)
                                       : apply_remove_sets(m, spec, sats);
  // ~'_a = ~_a intersected with every applicable phi_i-partition. Both
  // endpoints of a crossing edge are cut (symmetric cut), and the cut
  // happens even when the availability change was vacuous or blocked.
  for (size_t i = 0; i < spec.items.size(); ++i) {
    const auto& it = spec.items[i];
    std::vector<int> informed;
    for (const auto& n : it.targets) informed.push_back(m.agent_index(n));
    for (const auto& n : it.informed) informed.push_back(m.agent_index(n));
    for (int a : informed) {
      for (int v = 0; v < m.num_states(); ++v) {
        int r = out.obs[a][v];
        if (sats[i].contains(v) != sats[i].contains(r)) {
          // split: states disagreeing with their representative start a
          // fresh block keyed by (old rep, phi side)
          out.obs[a][v] = -1 - r;  // temporary marker
        }
      }
      // resolve markers: the minority side of each split block gets the
      // smallest marked state as representative
      std::vector<int> fresh(m.num_states(), -1);
      for (int v = 0; v < m.num_states(); ++v) {
        if (out.obs[a][v] >= 0) continue;
        int r = -1 - out.obs[a][v];
        if (fresh[r] < 0) fresh[r] = v;
        out.obs[a][v] = fresh[r];
      }
    }
  }
  out.normalize_obs();
  // Availability uniformity is provably preserved (targets are always
  // informed of the precondition); a violation here is a bug.
  for (int a = 0; a < out.num_agents(); ++a)
    for (int v = 0; v < out.num_states(); ++v)
      if (out.avail[a][v] != out.avail[a][out.obs[a][v]])
        throw InternalError("availability uniformity broken by epistemic update");
  return out;
}

Model apply_epistemic(const Model& m, const UpdateSpec& spec, const Evaluator& eval) {
  return apply_epistemic_sets(m, spec, eval_items(m, spec, eval));
}

Model tag_states(const Model& m) {
  std::string prefix = "@state:";
  for (int gen = 2; ; ++gen) {
    bool clash = false;
    for (int v = 0; v < m.num_states() && !clash; ++v)
      clash = m.prop_index(prefix + m.states[v]) >= 0;
    if (!clash) break;
    prefix = "@state" + std::to_string(gen) + ":";
  }
  Model out = m;
  for (int v = 0; v < m.num_states(); ++v) {
    out.propositions.push_back(prefix + m.states[v]);
    StateSet only(m.num_states());
    only.insert(v);
    out.labelling.push_back(only);
  }
  // re-init would wipe content; just rebuild the lookup tables
  Model rebuilt;
  rebuilt.agents = out.agents;
  rebuilt.actions = out.actions;
  rebuilt.propositions = out.propositions;
  rebuilt.states = out.states;
  rebuilt.init_shape();
  rebuilt.labelling = out.labelling;
  rebuilt.avail = out.avail;
  rebuilt.trans = out.trans;
  rebuilt.obs = out.obs;
  return rebuilt;
}

}  // namespace atld
