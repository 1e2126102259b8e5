#include "atld/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "atld/errors.hpp"

namespace atld {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << content;
}

namespace {

std::vector<std::string> str_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(e.get<std::string>());
  return out;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

Model load_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("model JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("model JSON must be an object");

  Model m;
  m.agents = str_list(j.at("agents"), "agents");
  m.actions = str_list(j.at("actions"), "actions");
  m.propositions = str_list(j.at("propositions"), "propositions");
  if (!j.at("states").is_array()) throw InputError("states must be a list");
  for (const auto& s : j.at("states")) m.states.push_back(s.at("id").get<std::string>());
  m.init_shape();

  for (const auto& s : j.at("states")) {
    int v = m.state_index(s.at("id").get<std::string>());
    for (const auto& p : str_list(s.value("label", json::array()), "label")) {
      int pi = m.prop_index(p);
      if (pi < 0) throw InputError("unknown proposition '" + p + "'");
      m.labelling[pi].insert(v);
    }
  }

  json avail_j = j.value("availability", json::object());
  for (auto& [agent, per_state] : avail_j.items()) {
    int a = m.agent_index(agent);
    for (auto& [state, acts] : per_state.items()) {
      int v = m.state_index(state);
      for (const auto& act : str_list(acts, "availability entry"))
        m.avail[a][v] |= uint64_t{1} << m.action_index(act);
    }
  }

  bool self_default = j.value("default_transition", "") == "self-loop";
  std::vector<char> defined(m.num_states() * m.profile_count, 0);
  json trans_j = j.value("transitions", json::array());
  for (const auto& t : trans_j) {
    int from = m.state_index(t.at("from").get<std::string>());
    int to = m.state_index(t.at("to").get<std::string>());
    std::vector<int> acts(m.num_agents(), -1);
    for (auto& [agent, act] : t.at("profile").items())
      acts[m.agent_index(agent)] = m.action_index(act.get<std::string>());
    for (int a = 0; a < m.num_agents(); ++a)
      if (acts[a] < 0)
        throw InputError("transition profile missing agent '" + m.agents[a] + "'");
    long p = m.profile_of(acts);
    if (defined[from * m.profile_count + p])
      throw InputError("duplicate transition from '" + m.states[from] + "'");
    defined[from * m.profile_count + p] = 1;
    m.trans[from * m.profile_count + p] = to;
  }
  if (!self_default) {
    for (int v = 0; v < m.num_states(); ++v)
      for (long p = 0; p < m.profile_count; ++p)
        if (!defined[v * m.profile_count + p])
          throw InputError("missing transition from '" + m.states[v] +
                           "' (no default_transition)");
  }

  json obs_j = j.value("observations", json::object());
  for (auto& [agent, groups] : obs_j.items()) {
    int a = m.agent_index(agent);
    std::vector<int> parent(m.num_states());
    for (int v = 0; v < m.num_states(); ++v) parent[v] = v;
    if (!groups.is_array()) throw InputError("observations entry must be a list");
    for (const auto& g : groups) {
      auto members = str_list(g, "observation group");
      if (members.empty()) continue;
      int first = m.state_index(members[0]);
      for (const auto& s : members) {
        int r1 = find_root(parent, first), r2 = find_root(parent, m.state_index(s));
        parent[std::max(r1, r2)] = std::min(r1, r2);
      }
    }
    for (int v = 0; v < m.num_states(); ++v) m.obs[a][v] = find_root(parent, v);
  }
  m.normalize_obs();
  return m;
}

Model load_model_file(const std::string& path) {
  return load_model(read_file(path));
}

std::string save_model(const Model& m) {
  ordered_json j;
  j["agents"] = m.agents;
  j["actions"] = m.actions;
  j["propositions"] = m.propositions;
  j["states"] = ordered_json::array();
  for (int v = 0; v < m.num_states(); ++v) {
    ordered_json s;
    s["id"] = m.states[v];
    auto labels = ordered_json::array();
    for (int p = 0; p < (int)m.propositions.size(); ++p)
      if (m.labelled(v, p)) labels.push_back(m.propositions[p]);
    s["label"] = labels;
    j["states"].push_back(s);
  }
  j["availability"] = ordered_json::object();
  for (int a = 0; a < m.num_agents(); ++a) {
    ordered_json per_state;
    for (int v = 0; v < m.num_states(); ++v) {
      auto acts = ordered_json::array();
      for (int act : m.available_actions(a, v)) acts.push_back(m.actions[act]);
      per_state[m.states[v]] = acts;
    }
    j["availability"][m.agents[a]] = per_state;
  }
  j["default_transition"] = "self-loop";
  j["transitions"] = ordered_json::array();
  for (int v = 0; v < m.num_states(); ++v) {
    for (long p = 0; p < m.profile_count; ++p) {
      int to = m.successor(v, p);
      if (to == v) continue;
      ordered_json t;
      t["from"] = m.states[v];
      ordered_json profile;
      long rem = p;
      for (int a = 0; a < m.num_agents(); ++a) {
        profile[m.agents[a]] = m.actions[rem % m.num_actions()];
        rem /= m.num_actions();
      }
      t["profile"] = profile;
      t["to"] = m.states[to];
      j["transitions"].push_back(t);
    }
  }
  ordered_json observations = ordered_json::object();
  for (int a = 0; a < m.num_agents(); ++a) {
    bool identity = true;
    for (int v = 0; v < m.num_states(); ++v)
      if (m.obs[a][v] != v) identity = false;
    if (identity) continue;
    std::map<int, std::vector<std::string>> blocks;
    for (int v = 0; v < m.num_states(); ++v)
      blocks[m.obs[a][v]].push_back(m.states[v]);
    auto out = ordered_json::array();
    for (auto& [rep, members] : blocks)
      if (members.size() > 1) out.push_back(members);
    observations[m.agents[a]] = out;
  }
  if (!observations.empty()) j["observations"] = observations;
  return j.dump(2) + "\n";
}

void save_model_file(const Model& m, const std::string& path) {
  write_file(path, save_model(m));
}

}  // namespace atld
