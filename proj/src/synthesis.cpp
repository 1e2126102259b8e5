#include "atld/synthesis.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "atld/errors.hpp"
#include "atld/mc_epistemic.hpp"
#include "atld/mc_perfect.hpp"

namespace atld {

CandidatePool default_pool(const Model& m) {
  CandidatePool pool;
  pool.preconditions.push_back(f_true());
  for (const auto& p : m.propositions) {
    pool.preconditions.push_back(f_prop(p));
    pool.preconditions.push_back(f_not(f_prop(p)));
  }
  pool.actions = m.actions;
  for (const auto& a : m.agents) pool.coalitions.push_back({a});
  pool.signs = {Sign::Grant, Sign::Remove};
  return pool;
}

namespace {

// Lazily walks all update specs drawn from the pool in certificate order:
// fewer items first, then item combinations lexicographically, then signs
// in pool order.
struct SpecCursor {
  const std::vector<UpdateItem>* universe;
  const std::vector<Sign>* signs;
  int max_items;

  int size = 1;
  std::vector<int> combo;
  size_t sign = 0;
  bool done = false;

  void reset() {
    size = 1;
    sign = 0;
    done = universe->empty() || signs->empty() || max_items < 1;
    if (!done) first_combo();
  }

  void first_combo() {
    combo.resize(size);
    for (int i = 0; i < size; ++i) combo[i] = i;
  }

  UpdateSpec current() const {
    UpdateSpec spec;
    spec.sign = (*signs)[sign];
    for (int i : combo) spec.items.push_back((*universe)[i]);
    return spec;
  }

  void advance() {
    if (++sign < signs->size()) return;
    sign = 0;
    // next combination of `size` indices out of the universe
    int n = (int)universe->size();
    int i = size - 1;
    while (i >= 0 && combo[i] == n - size + i) --i;
    if (i >= 0) {
      ++combo[i];
      for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
      return;
    }
    if (++size > std::min(max_items, n)) {
      done = true;
      return;
    }
    first_combo();
  }
};

}  // namespace

SolveResult solve_bounded(const Model& m, int state, const FormulaPtr& goal,
                          const CandidatePool& pool, const SolveOptions& opts) {
  if (state < 0 || state >= m.num_states())
    throw InputError("solve_bounded: state index out of range");

  std::vector<UpdateItem> universe;
  for (const auto& p : pool.preconditions)
    for (const auto& act : pool.actions)
      for (const auto& coal : pool.coalitions)
        universe.push_back(UpdateItem{p, act, coal, {}});

  int max_items = pool.max_items_per_update;
  if (max_items <= 0)
    max_items = std::min<long>(16, (long)std::max<size_t>(1, universe.size()));

  Evaluator ev = opts.epistemic ? epistemic_evaluator(opts.strategy_budget)
                                : perfect_evaluator();

  auto holds = [&](const std::vector<UpdateSpec>& seq) {
    FormulaPtr f = goal;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) f = f_update(*it, f);
    return ev(m, f).contains(state);
  };
  auto certified = [&](const std::vector<UpdateSpec>& seq) {
    Model cur = m;
    for (const auto& spec : seq) {
      if (opts.epistemic)
        cur = apply_epistemic(cur, spec, ev);
      else
        cur = spec.sign == Sign::Grant ? apply_grant(cur, spec, ev)
                                       : apply_remove(cur, spec, ev);
    }
    return ev(cur, goal).contains(state);
  };

  SolveResult res;
  auto try_one = [&](const std::vector<UpdateSpec>& seq) {
    if (++res.candidates_tried > opts.candidate_budget)
      throw BudgetError("synthesis candidate budget exceeded",
                        res.candidates_tried);
    if (!holds(seq)) return false;
    if (!certified(seq))
      throw InternalError("certificate failed re-verification");
    res.found = true;
    res.sequence = seq;
    return true;
  };

  if (try_one({})) return res;

  for (int len = 1; len <= pool.max_sequence_length; ++len) {
    // tuple odometer, rightmost cursor fastest = lexicographic order
    std::vector<SpecCursor> cur(len, SpecCursor{&universe, &pool.signs, max_items});
    bool empty = false;
    for (auto& c : cur) {
      c.reset();
      empty |= c.done;
    }
    if (empty) break;
    for (;;) {
      std::vector<UpdateSpec> seq;
      for (auto& c : cur) seq.push_back(c.current());
      if (try_one(seq)) return res;
      int i = len - 1;
      for (;;) {
        cur[i].advance();
        if (!cur[i].done) break;
        cur[i].reset();
        if (--i < 0) break;
      }
      if (i < 0) break;
    }
  }
  return res;
}

// --- 3SAT ------------------------------------------------------------------

CnfInstance parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfInstance cnf;
  int expected_clauses = -1;
  std::vector<int> lits;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> cnf.num_atoms >> expected_clauses) || fmt != "cnf")
        throw InputError("dimacs: malformed problem line: " + line);
      header = true;
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (lits.empty() || lits.size() > 3)
          throw InputError("dimacs: clause must have 1..3 literals");
        while (lits.size() < 3) lits.push_back(lits.back());
        cnf.clauses.push_back({lits[0], lits[1], lits[2]});
        lits.clear();
      } else {
        if (std::abs(lit) < 1 || (header && std::abs(lit) > cnf.num_atoms))
          throw InputError("dimacs: literal out of range");
        lits.push_back(lit);
      }
    }
  }
  if (!header) throw InputError("dimacs: missing problem line");
  if (!lits.empty()) throw InputError("dimacs: unterminated clause");
  if ((int)cnf.clauses.size() != expected_clauses)
    throw InputError("dimacs: clause count mismatch");
  return cnf;
}

std::string to_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_atoms << " " << cnf.clauses.size() << "\n";
  for (const auto& cl : cnf.clauses)
    out << cl[0] << " " << cl[1] << " " << cl[2] << " 0\n";
  return out.str();
}

bool brute_sat(const CnfInstance& cnf) {
  if (cnf.num_atoms > 20)
    throw BudgetError("brute_sat: atom budget exceeded", cnf.num_atoms);
  for (long bits = 0; bits < (1L << cnf.num_atoms); ++bits) {
    bool all = true;
    for (const auto& cl : cnf.clauses) {
      bool sat = false;
      for (int lit : cl) {
        bool val = (bits >> (std::abs(lit) - 1)) & 1;
        if (lit > 0 ? val : !val) sat = true;
      }
      if (!sat) { all = false; break; }
    }
    if (all) return true;
  }
  return false;
}

Reduction gen_3sat(const CnfInstance& cnf) {
  int m = (int)cnf.clauses.size();
  int k = cnf.num_atoms;
  if (m == 0 || k == 0) throw InputError("gen_3sat: empty instance");
  for (const auto& cl : cnf.clauses)
    for (int lit : cl)
      if (std::abs(lit) > k) throw InputError("gen_3sat: literal out of range");

  Reduction red;
  Model& g = red.model;
  g.agents = {"a"};
  g.actions = {"alpha", "beta", "beta1", "beta2", "beta3", "gamma"};
  g.propositions = {"p"};
  for (int j = 1; j <= k; ++j) g.propositions.push_back("p" + std::to_string(j));
  g.propositions.push_back("pT");
  g.propositions.push_back("pF");

  // X_1..X_m, then x^i_1..x^i_3 per clause, then u_1..u_k, then t_1, t_2
  for (int i = 1; i <= m; ++i) g.states.push_back("X" + std::to_string(i));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= 3; ++j)
      g.states.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
  for (int j = 1; j <= k; ++j) g.states.push_back("u" + std::to_string(j));
  g.states.push_back("t1");
  g.states.push_back("t2");
  g.init_shape();

  auto X = [&](int i) { return i - 1; };
  auto lit_state = [&](int i, int j) { return m + (i - 1) * 3 + (j - 1); };
  auto U = [&](int j) { return m + 3 * m + (j - 1); };
  int t1 = m + 3 * m + k, t2 = t1 + 1;
  int alpha = 0, beta = 1, gamma = 5;
  int pP = 0, pT = k + 1, pF = k + 2;

  for (int i = 1; i <= m; ++i) {
    g.labelling[pP].insert(X(i));
    g.avail[0][X(i)] = (1u << alpha) | (1u << 2) | (1u << 3) | (1u << 4);
    g.trans[X(i) * 6 + alpha] = i < m ? X(i + 1) : X(m);
    for (int j = 1; j <= 3; ++j) {
      int lit = cnf.clauses[i - 1][j - 1];
      int s = lit_state(i, j);
      g.trans[X(i) * 6 + (1 + j)] = s;  // beta_j
      g.labelling[lit > 0 ? pT : pF].insert(s);
      g.avail[0][s] = 1u << alpha;
      g.trans[s * 6 + alpha] = U(std::abs(lit));
    }
  }
  for (int j = 1; j <= k; ++j) {
    g.labelling[j].insert(U(j));  // p_j
    g.avail[0][U(j)] = 1u << gamma;
    g.trans[U(j) * 6 + alpha] = t1;  // disabled until granted
    g.trans[U(j) * 6 + beta] = t2;
  }
  g.labelling[pT].insert(t1);
  g.labelling[pF].insert(t2);
  g.avail[0][t1] = g.avail[0][t2] = 1u << alpha;

  std::vector<std::string> A = {"a"};
  auto one_move = [&](const std::string& tv, const std::string& other) {
    // tv -> (<a>X(!tv & <a>X tv) & !<a>X<a>X other)
    return f_implies(
        f_prop(tv),
        f_and(f_next(A, f_and(f_not(f_prop(tv)), f_next(A, f_prop(tv)))),
              f_not(f_next(A, f_next(A, f_prop(other))))));
  };
  red.goal = f_globally(
      A, f_and(f_prop("p"),
               f_next(A, f_and(f_not(f_prop("p")),
                               f_and(one_move("pT", "pF"), one_move("pF", "pT"))))));
  red.start_state = "X1";
  return red;
}

CandidatePool reduction_pool(const CnfInstance& cnf) {
  CandidatePool pool;
  for (int j = 1; j <= cnf.num_atoms; ++j)
    pool.preconditions.push_back(f_prop("p" + std::to_string(j)));
  pool.actions = {"alpha", "beta"};
  pool.coalitions = {{"a"}};
  pool.signs = {Sign::Grant};
  pool.max_items_per_update = 2 * cnf.num_atoms;
  pool.max_sequence_length = 1;
  return pool;
}

}  // namespace atld
