#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "atld/errors.hpp"
#include "atld/mc_perfect.hpp"
#include "support/support.hpp"

using namespace atld;

namespace {

StateSet sat(const Model& m, const std::string& text, CheckStats* st = nullptr) {
  return check(m, parse_formula(text), st);
}

StateSet states_of(const Model& m, std::initializer_list<const char*> names) {
  StateSet s(m.num_states());
  for (const char* n : names) s.insert(m.state_index(n));
  return s;
}

}  // namespace

TEST_CASE("pre-image respects availability of both sides") {
  Model m = support::fixture("gbob_left");
  StateSet target = states_of(m, {"q1"});
  std::vector<int> coal = {m.agent_index("r1"), m.agent_index("r2")};
  CHECK(pre(m, coal, target) == states_of(m, {"q1", "q2"}));
  // granting right to r2 makes q0 controllable too
  Model right = support::fixture("gbob_right");
  CHECK(pre(right, coal, target) == states_of(right, {"q0", "q1", "q2"}));
  // the empty coalition needs all enabled successors inside the target
  CHECK(pre(m, {}, StateSet::all(3)) == StateSet::all(3));
  CHECK(pre(m, {}, target).empty());
}

TEST_CASE("booleans and has") {
  Model m = support::fixture("gbob_left");
  CHECK(sat(m, "true") == StateSet::all(3));
  CHECK(sat(m, "false").empty());
  CHECK(sat(m, "atBob | warm") == states_of(m, {"q1", "q2"}));
  CHECK(sat(m, "atBob -> warm") == states_of(m, {"q0", "q2"}));
  CHECK(sat(m, "has(r1,right)") == StateSet::all(3));
  CHECK(sat(m, "has(r2,right)").empty());
  CHECK(sat(support::fixture("gbob_right"), "has(r2,right)") == StateSet::all(3));
}

TEST_CASE("oxygen-tank verdicts under perfect information") {
  Model left = support::fixture("gbob_left");
  CHECK(sat(left, "<{r1,r2}> F atBob") == StateSet::all(3));
  CHECK(sat(left, "<{r1,r2}> X atBob") == states_of(left, {"q1", "q2"}));
  CHECK(sat(left,
            "!has(r2,right) & [true: right->{r2}]+"
            "(has(r2,right) & <{r1,r2}> X atBob)") == StateSet::all(3));
  CHECK(sat(left, "[true: right -> {r2}]+ [!atBob: left -> {r1}]- "
                  "<{}> atBob R !warm") == states_of(left, {"q0", "q1"}));
}

TEST_CASE("until and release fixpoints") {
  Model fig2 = support::fixture("gbob_fig2");
  CHECK(sat(fig2, "<{}> atBob R !warm") == states_of(fig2, {"q0", "q1"}));
  CHECK(sat(fig2, "<{r1,r2}> !warm U atBob") ==
        states_of(fig2, {"q0", "q1"}));
  Model left = support::fixture("gbob_left");
  // stalling on a mismatched profile keeps the tank out of the balcony
  CHECK(sat(left, "<{r1,r2}> G !warm") == states_of(left, {"q0", "q1"}));
  // r1 can stall with a mismatched profile anywhere outside q1
  CHECK(sat(left, "<{r1}> G !atBob") == states_of(left, {"q0", "q2"}));
}

TEST_CASE("update cases rebuild the model before recursing") {
  Model left = support::fixture("gbob_left");
  CheckStats st;
  sat(left, "[true: right -> {r2}]+ [!atBob: left -> {r1}]- <{}> G true", &st);
  CHECK(st.models_built == 2);
}

TEST_CASE("expressivity witnesses separate grant and removal") {
  Model g1 = support::fixture("g1"), g2 = support::fixture("g2");
  Model g3 = support::fixture("g3"), g4 = support::fixture("g4");
  auto grant = "[true: beta -> {a}]+ <{a}> X !p";
  auto removal = "[true: beta -> {a}]- <{a}> X !p";
  CHECK(!sat(g1, grant).contains(g1.state_index("v")));
  CHECK(sat(g2, grant).contains(g2.state_index("v")));
  CHECK(!sat(g3, removal).contains(g3.state_index("v")));
  CHECK(sat(g4, removal).contains(g4.state_index("v")));
}

TEST_CASE("epistemic constructs are rejected in perfect-information mode") {
  Model m = support::fixture("gbob_left");
  CHECK_THROWS_AS(sat(m, "K{r1} atBob"), EpistemicModeError);
  CHECK_THROWS_AS(sat(m, "[true: right -> {r2} | {r1}]+ atBob"),
                  EpistemicModeError);
}

TEST_CASE("reference oracle agrees on the fixtures") {
  for (const char* name : {"gbob_left", "gbob_right", "gbob_fig2"}) {
    Model m = support::fixture(name);
    for (const char* f :
         {"<{r1,r2}> F atBob", "<{r1}> G !atBob", "<{}> atBob R !warm",
          "<{r2}> !warm U atBob", "[!atBob: left -> {r1}]- <{}> G !warm"}) {
      CAPTURE(name);
      CAPTURE(f);
      CHECK(sat(m, f) == reference_check(m, parse_formula(f)));
    }
  }
}

TEST_CASE("reference oracle agrees on random models and formulas") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 60; ++i) {
    Model m = support::random_model(rng, {1 + (int)(rng() % 4), 2, 2, 2, false});
    FormulaPtr f = support::random_formula(rng, m, {4, true, false});
    CAPTURE(render_formula(f));
    CHECK(check(m, f) == reference_check(m, f));
  }
}

TEST_CASE("reference oracle enforces its strategy budget") {
  std::mt19937 rng(5);
  Model m = support::random_model(rng, {4, 2, 2, 2, false});
  for (int a = 0; a < 2; ++a)
    for (int v = 0; v < 4; ++v) m.avail[a][v] = 3;  // 2^8 strategies
  CHECK_THROWS_AS(reference_check(m, parse_formula("<{a0,a1}> X p0"), 10),
                  BudgetError);
}
