#include "atld/mc_perfect.hpp"

#include <algorithm>
#include <vector>

#include "atld/errors.hpp"

namespace atld {

namespace {

std::vector<int> resolve_coalition(const Model& m,
                                   const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(m.agent_index(n));
  std::sort(out.begin(), out.end());
  return out;
}

// Odometer over per-agent action lists; calls fn with the profile index.
// Returns false if fn ever returns false (short-circuit).
template <class Fn>
bool for_each_joint(const Model& m, const std::vector<std::vector<int>>& choices,
                    Fn&& fn) {
  int n = (int)choices.size();
  std::vector<int> idx(n, 0);
  std::vector<int> acts(n);
  for (;;) {
    for (int i = 0; i < n; ++i) acts[i] = choices[i][idx[i]];
    if (!fn(acts)) return false;
    int i = 0;
    while (i < n && ++idx[i] == (int)choices[i].size()) idx[i++] = 0;
    if (i == n) return true;
  }
}

}  // namespace

StateSet pre(const Model& m, const std::vector<int>& coalition,
             const StateSet& target, CheckStats* stats) {
  if (stats) stats->pre_calls++;
  std::vector<int> opponents;
  {
    std::vector<char> in_coal(m.num_agents(), 0);
    for (int a : coalition) in_coal[a] = 1;
    for (int a = 0; a < m.num_agents(); ++a)
      if (!in_coal[a]) opponents.push_back(a);
  }

  StateSet result(m.num_states());
  std::vector<int> full(m.num_agents());
  for (int v = 0; v < m.num_states(); ++v) {
    std::vector<std::vector<int>> coal_choices, opp_choices;
    for (int a : coalition) coal_choices.push_back(m.available_actions(a, v));
    for (int a : opponents) opp_choices.push_back(m.available_actions(a, v));

    auto opponents_confined = [&](const std::vector<int>& coal_acts) {
      for (size_t i = 0; i < coalition.size(); ++i)
        full[coalition[i]] = coal_acts[i];
      bool all_in = for_each_joint(m, opp_choices, [&](const std::vector<int>& opp_acts) {
        for (size_t i = 0; i < opponents.size(); ++i)
          full[opponents[i]] = opp_acts[i];
        return target.contains(m.successor(v, m.profile_of(full)));
      });
      return all_in;
    };

    bool ok;
    if (coalition.empty()) {
      ok = opponents_confined({});
    } else {
      // exists a coalition choice confining every completion
      ok = !for_each_joint(m, coal_choices, [&](const std::vector<int>& coal_acts) {
        return !opponents_confined(coal_acts);
      });
    }
    if (ok) result.insert(v);
  }
  return result;
}

namespace {

StateSet eval(const Model& m, const Formula* f, CheckStats* stats);

StateSet eval_ptr(const Model& m, const FormulaPtr& f, CheckStats* stats) {
  return eval(m, f.get(), stats);
}

StateSet eval(const Model& m, const Formula* f, CheckStats* stats) {
  switch (f->kind) {
    case Kind::True:
      return StateSet::all(m.num_states());
    case Kind::False:
      return StateSet(m.num_states());
    case Kind::Prop: {
      int p = m.prop_index(f->id);
      if (p < 0) return StateSet(m.num_states());  // outside this model's AP slice
      return m.labelling[p];
    }
    case Kind::Not:
      return eval_ptr(m, f->lhs, stats).complement();
    case Kind::And:
      return eval_ptr(m, f->lhs, stats) & eval_ptr(m, f->rhs, stats);
    case Kind::Or:
      return eval_ptr(m, f->lhs, stats) | eval_ptr(m, f->rhs, stats);
    case Kind::Implies:
      return eval_ptr(m, f->lhs, stats).complement() | eval_ptr(m, f->rhs, stats);
    case Kind::Has: {
      int a = m.agent_index(f->id);
      int act = m.action_index(f->action);
      StateSet out(m.num_states());
      for (int v = 0; v < m.num_states(); ++v)
        if (m.available(a, v, act)) out.insert(v);
      return out;
    }
    case Kind::Knows:
      throw EpistemicModeError("epistemic construct in perfect-information mode: K");
    case Kind::Next: {
      auto coal = resolve_coalition(m, f->coalition);
      return pre(m, coal, eval_ptr(m, f->lhs, stats), stats);
    }
    case Kind::Until: {
      auto coal = resolve_coalition(m, f->coalition);
      StateSet sphi = eval_ptr(m, f->lhs, stats);
      StateSet spsi = eval_ptr(m, f->rhs, stats);
      StateSet z = spsi;  // least fixpoint, non-decreasing
      for (;;) {
        StateSet next = spsi | (sphi & pre(m, coal, z, stats));
        if (next == z) return z;
        z = next;
      }
    }
    case Kind::Release: {
      auto coal = resolve_coalition(m, f->coalition);
      StateSet sphi = eval_ptr(m, f->lhs, stats);
      StateSet spsi = eval_ptr(m, f->rhs, stats);
      StateSet z = spsi;  // greatest fixpoint, non-increasing
      for (;;) {
        StateSet next = spsi & (sphi | pre(m, coal, z, stats));
        if (next == z) return z;
        z = next;
      }
    }
    case Kind::Update: {
      for (const auto& it : f->update.items)
        if (!it.informed.empty())
          throw EpistemicModeError(
              "epistemic construct in perfect-information mode: informed set");
      std::vector<StateSet> sats;
      for (const auto& it : f->update.items)
        sats.push_back(eval_ptr(m, it.precondition, stats));
      Model updated = f->update.sign == Sign::Grant
                          ? apply_grant_sets(m, f->update, sats)
                          : apply_remove_sets(m, f->update, sats);
      if (stats) stats->models_built++;
      return eval_ptr(updated, f->lhs, stats);
    }
  }
  throw InternalError("unhandled formula kind");
}

}  // namespace

StateSet check(const Model& m, const FormulaPtr& f, CheckStats* stats) {
  return eval(m, f.get(), stats);
}

// ---------------------------------------------------------------------------
// Reference oracle. Strategic modalities by brute force: enumerate all
// memoryless strategies of the coalition over available actions; for each,
// look for a failing path in the pruned graph by explicit reachability and
// cycle search (no fixpoints).

namespace {

struct Oracle {
  long budget;

  StateSet run(const Model& m, const Formula* f) {
    switch (f->kind) {
      case Kind::True: return StateSet::all(m.num_states());
      case Kind::False: return StateSet(m.num_states());
      case Kind::Prop: {
        int p = m.prop_index(f->id);
        return p < 0 ? StateSet(m.num_states()) : m.labelling[p];
      }
      case Kind::Not: return run(m, f->lhs.get()).complement();
      case Kind::And: return run(m, f->lhs.get()) & run(m, f->rhs.get());
      case Kind::Or: return run(m, f->lhs.get()) | run(m, f->rhs.get());
      case Kind::Implies:
        return run(m, f->lhs.get()).complement() | run(m, f->rhs.get());
      case Kind::Has: {
        int a = m.agent_index(f->id), act = m.action_index(f->action);
        StateSet out(m.num_states());
        for (int v = 0; v < m.num_states(); ++v)
          if (m.available(a, v, act)) out.insert(v);
        return out;
      }
      case Kind::Knows:
        throw EpistemicModeError("epistemic construct in reference oracle");
      case Kind::Update: {
        for (const auto& it : f->update.items)
          if (!it.informed.empty())
            throw EpistemicModeError("informed set in reference oracle");
        std::vector<StateSet> sats;
        for (const auto& it : f->update.items)
          sats.push_back(run(m, it.precondition.get()));
        Model updated = f->update.sign == Sign::Grant
                            ? apply_grant_sets(m, f->update, sats)
                            : apply_remove_sets(m, f->update, sats);
        return run(updated, f->lhs.get());
      }
      case Kind::Next:
      case Kind::Until:
      case Kind::Release:
        return strategic(m, f);
    }
    throw InternalError("unhandled formula kind");
  }

  StateSet strategic(const Model& m, const Formula* f) {
    auto coal = resolve_coalition(m, f->coalition);
    StateSet s1 = run(m, f->lhs.get());
    StateSet s2 = f->rhs ? run(m, f->rhs.get()) : StateSet(m.num_states());

    // strategies: per coalition member, one available action per state
    long count = 1;
    for (int a : coal)
      for (int v = 0; v < m.num_states(); ++v) {
        count *= (long)m.available_actions(a, v).size();
        if (count > budget)
          throw BudgetError("reference oracle strategy budget exceeded", count);
      }

    StateSet result(m.num_states());
    std::vector<std::vector<int>> choice(coal.size(),
                                         std::vector<int>(m.num_states(), 0));
    std::vector<std::vector<std::vector<int>>> opts(coal.size());
    for (size_t i = 0; i < coal.size(); ++i) {
      opts[i].resize(m.num_states());
      for (int v = 0; v < m.num_states(); ++v)
        opts[i][v] = m.available_actions(coal[i], v);
    }

    auto evaluate = [&]() {
      auto succ = pruned_successors(m, coal, opts, choice);
      for (int v = 0; v < m.num_states(); ++v) {
        if (result.contains(v)) continue;
        if (path_property_holds(m, succ, f, s1, s2, v)) result.insert(v);
      }
    };

    // odometer over all (member, state) cells
    std::vector<int> idx(coal.size() * m.num_states(), 0);
    for (;;) {
      for (size_t i = 0; i < coal.size(); ++i)
        for (int v = 0; v < m.num_states(); ++v)
          choice[i][v] = opts[i][v][idx[i * m.num_states() + v]];
      evaluate();
      size_t cell = 0;
      while (cell < idx.size()) {
        size_t i = cell / m.num_states();
        int v = (int)(cell % m.num_states());
        if (++idx[cell] < (int)opts[i][v].size()) break;
        idx[cell++] = 0;
      }
      if (cell == idx.size()) break;
    }
    return result;
  }

  std::vector<std::vector<int>> pruned_successors(
      const Model& m, const std::vector<int>& coal,
      const std::vector<std::vector<std::vector<int>>>& opts,
      const std::vector<std::vector<int>>& choice) {
    std::vector<char> in_coal(m.num_agents(), 0);
    for (size_t i = 0; i < coal.size(); ++i) in_coal[coal[i]] = 1;
    std::vector<std::vector<int>> succ(m.num_states());
    std::vector<int> full(m.num_agents());
    for (int v = 0; v < m.num_states(); ++v) {
      std::vector<std::vector<int>> free_choices;
      std::vector<int> free_agents;
      for (int a = 0; a < m.num_agents(); ++a) {
        if (in_coal[a]) continue;
        free_agents.push_back(a);
        free_choices.push_back(m.available_actions(a, v));
      }
      for (size_t i = 0; i < coal.size(); ++i) full[coal[i]] = choice[i][v];
      std::vector<char> seen(m.num_states(), 0);
      for_each_joint(m, free_choices, [&](const std::vector<int>& acts) {
        for (size_t i = 0; i < free_agents.size(); ++i)
          full[free_agents[i]] = acts[i];
        int to = m.successor(v, m.profile_of(full));
        if (!seen[to]) {
          seen[to] = 1;
          succ[v].push_back(to);
        }
        return true;
      });
    }
    return succ;
  }

  // Does every path from v satisfy the path formula? Decided by searching
  // for a failing path.
  bool path_property_holds(const Model& m, const std::vector<std::vector<int>>& succ,
                           const Formula* f, const StateSet& s1,
                           const StateSet& s2, int v) {
    int n = m.num_states();
    if (f->kind == Kind::Next) {
      for (int w : succ[v])
        if (!s1.contains(w)) return false;
      return true;
    }
    if (f->kind == Kind::Until) {
      // failing path: stay in !psi states forever, or hit !phi & !psi
      // through !psi states
      const StateSet& sphi = s1;
      const StateSet& spsi = s2;
      if (spsi.contains(v)) return true;
      std::vector<char> reach(n, 0);
      std::vector<int> stack = {v};
      reach[v] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (!sphi.contains(x)) return false;  // x is !psi (reach invariant) & !phi
        for (int w : succ[x])
          if (!spsi.contains(w) && !reach[w]) {
            reach[w] = 1;
            stack.push_back(w);
          }
      }
      // any cycle inside the reached !psi region is a failing path
      return !has_cycle(succ, reach, spsi);
    }
    // Release: failing path reaches a !psi state with all strictly earlier
    // states !phi
    const StateSet& sphi = s1;
    const StateSet& spsi = s2;
    if (!spsi.contains(v)) return false;
    std::vector<char> reach(n, 0);
    std::vector<int> stack;
    if (!sphi.contains(v)) {
      reach[v] = 1;
      stack.push_back(v);
    }
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int w : succ[x]) {
        if (!spsi.contains(w)) return false;
        if (!sphi.contains(w) && !reach[w]) {
          reach[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return true;
  }

  bool has_cycle(const std::vector<std::vector<int>>& succ,
                 const std::vector<char>& region, const StateSet& excluded) {
    // Kahn-style trimming of the region restricted to !excluded states:
    // anything that survives lies on or reaches a cycle; the region is
    // closed under successors within !excluded, so a survivor means a
    // failing infinite path.
    int n = (int)succ.size();
    std::vector<char> alive(n, 0);
    for (int v = 0; v < n; ++v) alive[v] = region[v];
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        bool has_succ = false;
        for (int w : succ[v])
          if (alive[w] && !excluded.contains(w)) has_succ = true;
        if (!has_succ) {
          alive[v] = 0;
          changed = true;
        }
      }
    }
    for (int v = 0; v < n; ++v)
      if (alive[v]) return true;
    return false;
  }
};

}  // namespace

StateSet reference_check(const Model& m, const FormulaPtr& f, long strategy_budget) {
  Oracle o{strategy_budget};
  return o.run(m, f.get());
}

}  // namespace atld
