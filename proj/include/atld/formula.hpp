#pragma once

#include <memory>
#include <string>
#include <vector>

namespace atld {

// AST for ATLD / ATELD formulas. Nodes are immutable and shared.
//
// Update modalities carry an UpdateSpec: a signed, simultaneous list of
// items "precondition: action -> targets | informed". The informed set is
// empty in plain ATLD mode.

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class Sign { Grant, Remove };

struct UpdateItem {
  FormulaPtr precondition;
  std::string action;
  std::vector<std::string> targets;   // A, sorted unique
  std::vector<std::string> informed;  // B, sorted unique; empty in ATLD mode
};

struct UpdateSpec {
  Sign sign = Sign::Grant;
  std::vector<UpdateItem> items;  // non-empty, applied simultaneously
};

enum class Kind {
  True,
  False,
  Prop,
  Not,
  And,
  Or,
  Implies,
  Has,
  Knows,
  Next,     // <A> X phi            (phi in lhs)
  Until,    // <A> lhs U rhs
  Release,  // <A> lhs R rhs
  Update,   // [spec] lhs
};

struct Formula {
  Kind kind;
  std::string id;                     // Prop name; agent for Has/Knows
  std::string action;                 // Has only
  std::vector<std::string> coalition; // Next/Until/Release, sorted unique
  FormulaPtr lhs, rhs;
  UpdateSpec update;                  // Update only
};

// Constructors.
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_prop(std::string name);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_has(std::string agent, std::string action);
FormulaPtr f_knows(std::string agent, FormulaPtr a);
FormulaPtr f_next(std::vector<std::string> coalition, FormulaPtr a);
FormulaPtr f_until(std::vector<std::string> coalition, FormulaPtr a, FormulaPtr b);
FormulaPtr f_release(std::vector<std::string> coalition, FormulaPtr a, FormulaPtr b);
// Derived: <A>F phi = <A> true U phi, <A>G phi = <A> false R phi.
FormulaPtr f_eventually(std::vector<std::string> coalition, FormulaPtr a);
FormulaPtr f_globally(std::vector<std::string> coalition, FormulaPtr a);
FormulaPtr f_update(UpdateSpec spec, FormulaPtr body);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Number of symbols: every node plus every update item component.
int formula_size(const FormulaPtr& f);

// True when f stays inside the ATL fragment (no update, has, or Knows).
bool is_atl(const FormulaPtr& f);
// True when f is ATLD (no Knows, every informed set empty).
bool is_atld(const FormulaPtr& f);

// Concrete syntax. parse_formula(render_formula(f)) is structurally equal
// to f.
FormulaPtr parse_formula(const std::string& text);
std::string render_formula(const FormulaPtr& f);
std::string render_update(const UpdateSpec& spec);
// A chain of update prefixes, e.g. "[true: a -> {x}]+[p: b -> {y}]-".
std::vector<UpdateSpec> parse_updates(const std::string& text);

// Ordered labelled subformula list Sub(psi).
//
// Each entry is a subformula, or an update modality, together with the
// prefix of update modalities in whose scope it sits. Entries appear
// after their own subentries of the same prefix, every modality entry
// appears before entries whose prefix extends through it, and the whole
// formula is last.
struct SubEntry {
  const Formula* node;
  bool update_modality;  // entry stands for the modality of `node` itself
  std::vector<const Formula*> prefix;  // update nodes, outermost first
};

std::vector<SubEntry> subformula_order(const FormulaPtr& root);

}  // namespace atld
