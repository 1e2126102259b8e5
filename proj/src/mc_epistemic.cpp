#include "atld/mc_epistemic.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "atld/errors.hpp"

namespace atld {

namespace {

// Observation blocks of one agent, as (representative -> member list).
std::map<int, std::vector<int>> blocks_of(const Model& m, int agent) {
  std::map<int, std::vector<int>> blocks;
  for (int v = 0; v < m.num_states(); ++v) blocks[m.obs[agent][v]].push_back(v);
  return blocks;
}

struct Checker {
  long budget;
  CheckStats* stats;

  StateSet eval(const Model& m, const Formula* f) {
    switch (f->kind) {
      case Kind::True:
        return StateSet::all(m.num_states());
      case Kind::False:
        return StateSet(m.num_states());
      case Kind::Prop: {
        int p = m.prop_index(f->id);
        return p < 0 ? StateSet(m.num_states()) : m.labelling[p];
      }
      case Kind::Not:
        return eval(m, f->lhs.get()).complement();
      case Kind::And:
        return eval(m, f->lhs.get()) & eval(m, f->rhs.get());
      case Kind::Or:
        return eval(m, f->lhs.get()) | eval(m, f->rhs.get());
      case Kind::Implies:
        return eval(m, f->lhs.get()).complement() | eval(m, f->rhs.get());
      case Kind::Has: {
        int a = m.agent_index(f->id), act = m.action_index(f->action);
        StateSet out(m.num_states());
        for (int v = 0; v < m.num_states(); ++v)
          if (m.available(a, v, act)) out.insert(v);
        return out;
      }
      case Kind::Knows: {
        int a = m.agent_index(f->id);
        StateSet sub = eval(m, f->lhs.get());
        StateSet out(m.num_states());
        for (const auto& [rep, members] : blocks_of(m, a)) {
          bool all = true;
          for (int v : members)
            if (!sub.contains(v)) { all = false; break; }
          if (all)
            for (int v : members) out.insert(v);
        }
        return out;
      }
      case Kind::Next:
      case Kind::Until:
      case Kind::Release:
        return strategic(m, f);
      case Kind::Update: {
        std::vector<StateSet> sats;
        for (const auto& it : f->update.items)
          sats.push_back(eval(m, it.precondition.get()));
        Model updated = apply_epistemic_sets(m, f->update, sats);
        if (stats) stats->models_built++;
        return eval(updated, f->lhs.get());
      }
    }
    throw InternalError("unhandled formula kind");
  }

  StateSet strategic(const Model& m, const Formula* f) {
    std::vector<int> coal;
    for (const auto& n : f->coalition) coal.push_back(m.agent_index(n));
    std::sort(coal.begin(), coal.end());

    StateSet s1 = eval(m, f->lhs.get());
    StateSet s2 = f->rhs ? eval(m, f->rhs.get()) : StateSet(m.num_states());

    if (coal.empty()) {
      // no strategy to pick and nobody whose uncertainty matters
      auto succ = pruned_successors(m, coal, {});
      return all_paths(m, succ, f, s1, s2);
    }

    // decision points: one action per observation block, per member;
    // availability is uniform on blocks, so any member's set represents it
    std::vector<std::vector<std::vector<int>>> block_members;  // [member][point]
    std::vector<std::vector<int>> point_options;               // [point]
    long count = 1;
    for (int a : coal) {
      block_members.emplace_back();
      for (const auto& [rep, members] : blocks_of(m, a)) {
        block_members.back().push_back(members);
        point_options.push_back(m.available_actions(a, rep));
        count *= (long)point_options.back().size();
        if (count > budget)
          throw BudgetError("uniform strategy budget exceeded", count);
      }
    }

    StateSet result(m.num_states());
    std::vector<int> idx(point_options.size(), 0);
    std::vector<std::vector<int>> sigma(coal.size(),
                                        std::vector<int>(m.num_states()));
    for (;;) {
      {
        size_t point = 0;
        for (size_t i = 0; i < coal.size(); ++i)
          for (const auto& members : block_members[i]) {
            int act = point_options[point][idx[point]];
            for (int v : members) sigma[i][v] = act;
            ++point;
          }
      }
      auto succ = pruned_successors(m, coal, sigma);
      StateSet good = all_paths(m, succ, f, s1, s2);
      // subjective reading: every state a member confuses with v is good
      for (int v = 0; v < m.num_states(); ++v) {
        if (result.contains(v)) continue;
        bool ok = true;
        for (size_t i = 0; i < coal.size() && ok; ++i)
          for (int w = 0; w < m.num_states(); ++w)
            if (m.obs[coal[i]][w] == m.obs[coal[i]][v] && !good.contains(w)) {
              ok = false;
              break;
            }
        if (ok) result.insert(v);
      }

      size_t cell = 0;
      while (cell < idx.size() && ++idx[cell] == (int)point_options[cell].size())
        idx[cell++] = 0;
      if (cell == idx.size()) break;
    }
    return result;
  }

  std::vector<std::vector<int>> pruned_successors(
      const Model& m, const std::vector<int>& coal,
      const std::vector<std::vector<int>>& sigma) {
    std::vector<char> in_coal(m.num_agents(), 0);
    for (int a : coal) in_coal[a] = 1;
    std::vector<std::vector<int>> succ(m.num_states());
    std::vector<int> full(m.num_agents());
    for (int v = 0; v < m.num_states(); ++v) {
      std::vector<int> free_agents;
      std::vector<std::vector<int>> free_choices;
      for (int a = 0; a < m.num_agents(); ++a) {
        if (in_coal[a]) continue;
        free_agents.push_back(a);
        free_choices.push_back(m.available_actions(a, v));
      }
      for (size_t i = 0; i < coal.size(); ++i) full[coal[i]] = sigma[i][v];
      std::vector<char> seen(m.num_states(), 0);
      std::vector<int> idx(free_agents.size(), 0);
      for (;;) {
        for (size_t i = 0; i < free_agents.size(); ++i)
          full[free_agents[i]] = free_choices[i][idx[i]];
        int to = m.successor(v, m.profile_of(full));
        if (!seen[to]) {
          seen[to] = 1;
          succ[v].push_back(to);
        }
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == (int)free_choices[i].size())
          idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
    return succ;
  }

  // All-paths labelling on the pruned graph (it is total, so the standard
  // universal fixpoints apply).
  StateSet all_paths(const Model& m, const std::vector<std::vector<int>>& succ,
                     const Formula* f, const StateSet& s1, const StateSet& s2) {
    auto ax = [&](const StateSet& t) {
      StateSet out(m.num_states());
      for (int v = 0; v < m.num_states(); ++v) {
        bool all = true;
        for (int w : succ[v])
          if (!t.contains(w)) { all = false; break; }
        if (all) out.insert(v);
      }
      return out;
    };
    if (f->kind == Kind::Next) return ax(s1);
    if (f->kind == Kind::Until) {
      StateSet z = s2;
      for (;;) {
        StateSet next = s2 | (s1 & ax(z));
        if (next == z) return z;
        z = next;
      }
    }
    StateSet z = s2;
    for (;;) {
      StateSet next = s2 & (s1 | ax(z));
      if (next == z) return z;
      z = next;
    }
  }
};

std::string render_prefix(const std::vector<const Formula*>& prefix) {
  std::string out;
  for (const Formula* u : prefix) out += render_update(u->update);
  return out;
}

}  // namespace

StateSet check_epistemic(const Model& m, const FormulaPtr& f,
                         const EpistemicOptions& opts, CheckStats* stats) {
  Checker c{opts.strategy_budget, stats};
  return c.eval(m, f.get());
}

std::vector<LabelRow> label_subformulas(const Model& m, const FormulaPtr& f,
                                        const EpistemicOptions& opts) {
  Checker c{opts.strategy_budget, nullptr};
  auto order = subformula_order(f);

  // model per prefix, built as each modality row is reached
  std::vector<std::pair<std::string, Model>> models = {{"", m}};
  auto model_for = [&](const std::string& key) -> const Model& {
    for (auto& [k, mod] : models)
      if (k == key) return mod;
    throw InternalError("prefix model missing: " + key);
  };

  std::vector<LabelRow> rows;
  for (const auto& entry : order) {
    LabelRow row;
    row.prefix = render_prefix(entry.prefix);
    row.update_modality = entry.update_modality;
    const Model& cur = model_for(row.prefix);
    if (entry.update_modality) {
      row.formula = render_update(entry.node->update);
      row.sat = StateSet(cur.num_states());
      std::vector<StateSet> sats;
      for (const auto& it : entry.node->update.items)
        sats.push_back(c.eval(cur, it.precondition.get()));
      models.emplace_back(row.prefix + row.formula,
                          apply_epistemic_sets(cur, entry.node->update, sats));
    } else {
      row.formula = render_formula(FormulaPtr(FormulaPtr(), entry.node));
      row.sat = c.eval(cur, entry.node);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace atld
