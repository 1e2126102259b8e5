#include "atld/formula.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "atld/errors.hpp"

namespace atld {

namespace {

std::vector<std::string> canon(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr f_true() { return node({Kind::True}); }
FormulaPtr f_false() { return node({Kind::False}); }
FormulaPtr f_prop(std::string name) {
  Formula f{Kind::Prop};
  f.id = std::move(name);
  return node(std::move(f));
}
FormulaPtr f_not(FormulaPtr a) {
  Formula f{Kind::Not};
  f.lhs = std::move(a);
  return node(std::move(f));
}
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  Formula f{Kind::And};
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  Formula f{Kind::Or};
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  Formula f{Kind::Implies};
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}
FormulaPtr f_has(std::string agent, std::string action) {
  Formula f{Kind::Has};
  f.id = std::move(agent);
  f.action = std::move(action);
  return node(std::move(f));
}
FormulaPtr f_knows(std::string agent, FormulaPtr a) {
  Formula f{Kind::Knows};
  f.id = std::move(agent);
  f.lhs = std::move(a);
  return node(std::move(f));
}
FormulaPtr f_next(std::vector<std::string> coalition, FormulaPtr a) {
  Formula f{Kind::Next};
  f.coalition = canon(std::move(coalition));
  f.lhs = std::move(a);
  return node(std::move(f));
}
FormulaPtr f_until(std::vector<std::string> coalition, FormulaPtr a, FormulaPtr b) {
  Formula f{Kind::Until};
  f.coalition = canon(std::move(coalition));
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}
FormulaPtr f_release(std::vector<std::string> coalition, FormulaPtr a, FormulaPtr b) {
  Formula f{Kind::Release};
  f.coalition = canon(std::move(coalition));
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}
FormulaPtr f_eventually(std::vector<std::string> coalition, FormulaPtr a) {
  return f_until(std::move(coalition), f_true(), std::move(a));
}
FormulaPtr f_globally(std::vector<std::string> coalition, FormulaPtr a) {
  return f_release(std::move(coalition), f_false(), std::move(a));
}
FormulaPtr f_update(UpdateSpec spec, FormulaPtr body) {
  if (spec.items.empty()) throw InputError("update spec with no items");
  for (auto& it : spec.items) {
    it.targets = canon(std::move(it.targets));
    it.informed = canon(std::move(it.informed));
  }
  Formula f{Kind::Update};
  f.update = std::move(spec);
  f.lhs = std::move(body);
  return node(std::move(f));
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->id != b->id || a->action != b->action || a->coalition != b->coalition)
    return false;
  if (a->kind == Kind::Update) {
    const auto& u = a->update;
    const auto& w = b->update;
    if (u.sign != w.sign || u.items.size() != w.items.size()) return false;
    for (size_t i = 0; i < u.items.size(); ++i) {
      const auto& x = u.items[i];
      const auto& y = w.items[i];
      if (x.action != y.action || x.targets != y.targets ||
          x.informed != y.informed || !equal(x.precondition, y.precondition))
        return false;
    }
  }
  if (bool(a->lhs) != bool(b->lhs) || bool(a->rhs) != bool(b->rhs)) return false;
  if (a->lhs && !equal(a->lhs, b->lhs)) return false;
  if (a->rhs && !equal(a->rhs, b->rhs)) return false;
  return true;
}

int formula_size(const FormulaPtr& f) {
  int n = 1;
  if (f->kind == Kind::Update) {
    for (const auto& it : f->update.items) {
      n += formula_size(it.precondition) + 1;  // action
      n += 1;                                  // target set
      if (!it.informed.empty()) n += 1;        // informed set
    }
  }
  if (f->lhs) n += formula_size(f->lhs);
  if (f->rhs) n += formula_size(f->rhs);
  return n;
}

bool is_atl(const FormulaPtr& f) {
  if (f->kind == Kind::Update || f->kind == Kind::Has || f->kind == Kind::Knows)
    return false;
  if (f->lhs && !is_atl(f->lhs)) return false;
  if (f->rhs && !is_atl(f->rhs)) return false;
  return true;
}

bool is_atld(const FormulaPtr& f) {
  if (f->kind == Kind::Knows) return false;
  if (f->kind == Kind::Update)
    for (const auto& it : f->update.items) {
      if (!it.informed.empty()) return false;
      if (!is_atld(it.precondition)) return false;
    }
  if (f->lhs && !is_atld(f->lhs)) return false;
  if (f->rhs && !is_atld(f->rhs)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rendering. Precedence, loosest to tightest: -> | & unary.

namespace {

std::string render_set(const std::vector<std::string>& xs) {
  std::string out = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i];
  }
  return out + "}";
}

enum Prec { PImplies = 0, POr = 1, PAnd = 2, PUnary = 3 };

void render(const Formula* f, int parent, std::string& out);

void render_child(const FormulaPtr& f, int prec, std::string& out) {
  render(f.get(), prec, out);
}

void render_update_spec(const UpdateSpec& u, std::string& out) {
  out += "[";
  for (size_t i = 0; i < u.items.size(); ++i) {
    if (i) out += ", ";
    const auto& it = u.items[i];
    render(it.precondition.get(), PImplies, out);
    out += ": " + it.action + " -> " + render_set(it.targets);
    if (!it.informed.empty()) out += " | " + render_set(it.informed);
  }
  out += (u.sign == Sign::Grant) ? "]+ " : "]- ";
}

void render(const Formula* f, int parent, std::string& out) {
  switch (f->kind) {
    case Kind::True: out += "true"; return;
    case Kind::False: out += "false"; return;
    case Kind::Prop: out += f->id; return;
    case Kind::Has: out += "has(" + f->id + "," + f->action + ")"; return;
    case Kind::Not:
      out += "!";
      render_child(f->lhs, PUnary, out);
      return;
    case Kind::Knows:
      out += "K{" + f->id + "} ";
      render_child(f->lhs, PUnary, out);
      return;
    case Kind::Next:
      out += "<" + render_set(f->coalition) + "> X ";
      render_child(f->lhs, PUnary, out);
      return;
    case Kind::Until:
      if (f->lhs->kind == Kind::True) {  // re-sugar F
        out += "<" + render_set(f->coalition) + "> F ";
        render_child(f->rhs, PUnary, out);
      } else {
        out += "<" + render_set(f->coalition) + "> (";
        render_child(f->lhs, PImplies, out);
        out += ") U (";
        render_child(f->rhs, PImplies, out);
        out += ")";
      }
      return;
    case Kind::Release:
      if (f->lhs->kind == Kind::False) {  // re-sugar G
        out += "<" + render_set(f->coalition) + "> G ";
        render_child(f->rhs, PUnary, out);
      } else {
        out += "<" + render_set(f->coalition) + "> (";
        render_child(f->lhs, PImplies, out);
        out += ") R (";
        render_child(f->rhs, PImplies, out);
        out += ")";
      }
      return;
    case Kind::Update:
      render_update_spec(f->update, out);
      render_child(f->lhs, PUnary, out);
      return;
    case Kind::And: {
      bool paren = parent > PAnd;
      if (paren) out += "(";
      render_child(f->lhs, PAnd + 1, out);
      out += " & ";
      render_child(f->rhs, PAnd, out);
      if (paren) out += ")";
      return;
    }
    case Kind::Or: {
      bool paren = parent > POr;
      if (paren) out += "(";
      render_child(f->lhs, POr + 1, out);
      out += " | ";
      render_child(f->rhs, POr, out);
      if (paren) out += ")";
      return;
    }
    case Kind::Implies: {
      bool paren = parent > PImplies;
      if (paren) out += "(";
      render_child(f->lhs, PImplies + 1, out);
      out += " -> ";
      render_child(f->rhs, PImplies, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string render_formula(const FormulaPtr& f) {
  std::string out;
  render(f.get(), PImplies, out);
  return out;
}

std::string render_update(const UpdateSpec& spec) {
  std::string out;
  render_update_spec(spec, out);
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// Sub(psi): update modalities outermost-first, subformulas in increasing
// order, the whole formula last.

namespace {

struct SubBuilder {
  std::vector<SubEntry> out;
  // Dedup on (modality-flag, printed formula, prefix identity).
  std::set<std::tuple<bool, std::string, std::vector<const Formula*>>> seen;

  void add(const Formula* f, bool modality,
           const std::vector<const Formula*>& prefix) {
    FormulaPtr tmp(f, [](const Formula*) {});
    auto key = std::make_tuple(modality, render_formula(tmp), prefix);
    if (!seen.insert(key).second) return;
    out.push_back({f, modality, prefix});
  }

  void visit(const Formula* f, std::vector<const Formula*> prefix) {
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Prop:
      case Kind::Has:
        break;
      case Kind::Not:
      case Kind::Knows:
      case Kind::Next:
        visit(f->lhs.get(), prefix);
        break;
      case Kind::And:
      case Kind::Or:
      case Kind::Implies:
      case Kind::Until:
      case Kind::Release:
        visit(f->lhs.get(), prefix);
        visit(f->rhs.get(), prefix);
        break;
      case Kind::Update: {
        for (const auto& it : f->update.items)
          visit(it.precondition.get(), prefix);
        add(f, /*modality=*/true, prefix);
        auto inner = prefix;
        inner.push_back(f);
        visit(f->lhs.get(), inner);
        break;
      }
    }
    add(f, /*modality=*/false, prefix);
  }
};

}  // namespace

std::vector<SubEntry> subformula_order(const FormulaPtr& root) {
  SubBuilder b;
  b.visit(root.get(), {});
  return b.out;
}

}  // namespace atld
