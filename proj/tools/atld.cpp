// Command-line front-end: validation, model checking, update application,
// bounded synthesis, 3SAT instance generation, normative translations.
//
// Machine-readable report as one JSON line on stdout (unless --format
// text), human summary on stderr. Exit codes: 0 success, 1 queried
// property false / nothing synthesized, 2 input error, 3 budget exceeded.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "atld/errors.hpp"
#include "atld/mc_epistemic.hpp"
#include "atld/mc_perfect.hpp"
#include "atld/model_io.hpp"
#include "atld/normative.hpp"
#include "atld/synthesis.hpp"

using nlohmann::ordered_json;

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_of(const std::string& content) {
  char buf[20];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(content));
  return buf;
}

struct Report {
  ordered_json j;
  std::string summary;
  int exit_code = 0;
  bool text_format = false;

  Report(const std::string& command, const std::vector<std::string>& args) {
    j["command"] = command;
    j["args"] = args;
    j["inputs"] = ordered_json::object();
  }
  void input(const std::string& name, const std::string& content) {
    j["inputs"][name] = digest_of(content);
  }
  int emit(double ms) {
    j["elapsed_ms"] = ms;
    if (text_format)
      std::cout << summary << "\n";
    else
      std::cout << j.dump() << "\n";
    std::cerr << summary << "\n";
    return exit_code;
  }
};

std::vector<std::string> state_names(const atld::Model& m, const atld::StateSet& s) {
  std::vector<std::string> out;
  for (int v : s.members()) out.push_back(m.states[v]);
  return out;
}

ordered_json stats_json(const atld::CheckStats& st) {
  return {{"pre_calls", st.pre_calls}, {"models_built", st.models_built}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ATLD/ATELD model checker and update synthesizer"};
  app.require_subcommand(1);

  std::string model_path, formula_text, update_text, state_id, out_path;
  std::string pool_path, dimacs_path, out_dir, eta_path, zeta_path, format = "json";
  bool epistemic = false;
  int bound = 1, jobs = 1;
  long budget = 1000000;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    c->add_option("--budget", budget);
    c->add_option("--jobs", jobs);
  };

  auto* c_validate = app.add_subcommand("validate", "check a model file");
  c_validate->add_option("model", model_path)->required();
  add_common(c_validate);

  auto* c_check = app.add_subcommand("check", "compute a satisfaction set");
  c_check->add_option("model", model_path)->required();
  c_check->add_option("formula", formula_text)->required();
  c_check->add_flag("--epistemic", epistemic);
  c_check->add_option("--state", state_id);
  add_common(c_check);

  auto* c_apply = app.add_subcommand("apply", "apply an update chain");
  c_apply->add_option("model", model_path)->required();
  c_apply->add_option("updates", update_text)->required();
  c_apply->add_flag("--epistemic", epistemic);
  c_apply->add_option("-o,--out", out_path);
  add_common(c_apply);

  auto* c_synth = app.add_subcommand("synth", "bounded update synthesis");
  c_synth->add_option("model", model_path)->required();
  c_synth->add_option("state", state_id)->required();
  c_synth->add_option("goal", formula_text)->required();
  c_synth->add_option("--bound", bound);
  c_synth->add_option("--pool", pool_path);
  c_synth->add_flag("--epistemic", epistemic);
  add_common(c_synth);

  auto* c_gen = app.add_subcommand("gen3sat", "3SAT reduction instance");
  c_gen->add_option("dimacs", dimacs_path)->required();
  c_gen->add_option("outdir", out_dir)->required();
  add_common(c_gen);

  auto* c_norm = app.add_subcommand("norm", "normative translation check");
  c_norm->add_option("model", model_path)->required();
  c_norm->add_option("goal", formula_text)->required();
  c_norm->add_option("--eta", eta_path);
  c_norm->add_option("--zeta", zeta_path);
  add_common(c_norm);

  CLI11_PARSE(app, argc, argv);

  auto* cmd = app.get_subcommands().front();
  std::vector<std::string> echo(argv + 1, argv + argc);
  Report rep(cmd->get_name(), echo);
  rep.text_format = format == "text";
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  };

  try {
    if (cmd == c_validate) {
      std::string text = atld::read_file(model_path);
      rep.input(model_path, text);
      atld::Model m = atld::load_model(text);
      auto vr = atld::validate(m);
      rep.j["result"] = {{"ok", vr.ok}, {"violations", vr.violations}};
      rep.summary = vr.ok ? "valid: " + model_path
                          : "invalid: " + std::to_string(vr.violations.size()) +
                                " violation(s)";
      rep.exit_code = vr.ok ? 0 : 2;
    } else if (cmd == c_check) {
      std::string text = atld::read_file(model_path);
      rep.input(model_path, text);
      rep.input("formula", formula_text);
      atld::Model m = atld::load_model(text);
      auto vr = atld::validate(m);
      if (!vr.ok) throw atld::InputError("invalid model: " + vr.violations.front());
      atld::FormulaPtr f = atld::parse_formula(formula_text);
      atld::CheckStats st;
      atld::StateSet sat =
          epistemic
              ? atld::check_epistemic(m, f, atld::EpistemicOptions{budget}, &st)
              : atld::check(m, f, &st);
      rep.j["result"] = {{"states", state_names(m, sat)}};
      rep.j["stats"] = stats_json(st);
      rep.summary = "holds at " + std::to_string(sat.count()) + "/" +
                    std::to_string(m.num_states()) + " states";
      if (!state_id.empty()) {
        bool holds = sat.contains(m.state_index(state_id));
        rep.j["result"]["state"] = state_id;
        rep.j["result"]["holds"] = holds;
        rep.summary = state_id + ": " + (holds ? "true" : "false");
        rep.exit_code = holds ? 0 : 1;
      }
    } else if (cmd == c_apply) {
      std::string text = atld::read_file(model_path);
      rep.input(model_path, text);
      rep.input("updates", update_text);
      atld::Model m = atld::load_model(text);
      auto vr = atld::validate(m);
      if (!vr.ok) throw atld::InputError("invalid model: " + vr.violations.front());
      atld::Evaluator ev = epistemic ? atld::epistemic_evaluator(budget)
                                     : atld::perfect_evaluator();
      for (const auto& spec : atld::parse_updates(update_text)) {
        if (epistemic)
          m = atld::apply_epistemic(m, spec, ev);
        else
          m = spec.sign == atld::Sign::Grant ? atld::apply_grant(m, spec, ev)
                                             : atld::apply_remove(m, spec, ev);
      }
      std::string serialized = atld::save_model(m);
      if (out_path.empty()) {
        rep.j["result"] = {{"model", ordered_json::parse(serialized)}};
        rep.summary = "updated model (" + std::to_string(m.num_states()) + " states)";
      } else {
        atld::write_file(out_path, serialized);
        rep.j["result"] = {{"path", out_path}, {"digest", digest_of(serialized)}};
        rep.summary = "wrote " + out_path;
      }
    } else if (cmd == c_synth) {
      std::string text = atld::read_file(model_path);
      rep.input(model_path, text);
      rep.input("goal", formula_text);
      atld::Model m = atld::load_model(text);
      auto vr = atld::validate(m);
      if (!vr.ok) throw atld::InputError("invalid model: " + vr.violations.front());
      atld::FormulaPtr goal = atld::parse_formula(formula_text);
      atld::CandidatePool pool;
      if (pool_path.empty()) {
        pool = atld::default_pool(m);
      } else {
        std::string ptext = atld::read_file(pool_path);
        rep.input(pool_path, ptext);
        auto pj = ordered_json::parse(ptext, nullptr, false);
        if (pj.is_discarded()) throw atld::InputError("malformed pool JSON");
        for (const auto& s : pj.value("preconditions", std::vector<std::string>{}))
          pool.preconditions.push_back(atld::parse_formula(s));
        pool.actions = pj.value("actions", m.actions);
        for (const auto& c : pj.value("coalitions", std::vector<std::vector<std::string>>{}))
          pool.coalitions.push_back(c);
        for (const auto& s : pj.value("signs", std::vector<std::string>{"+", "-"}))
          pool.signs.push_back(s == "+" ? atld::Sign::Grant : atld::Sign::Remove);
        pool.max_items_per_update = pj.value("max_items_per_update", 0);
      }
      pool.max_sequence_length = bound;
      atld::SolveOptions opts;
      opts.candidate_budget = budget;
      opts.epistemic = epistemic;
      opts.jobs = jobs;
      auto res = atld::solve_bounded(m, m.state_index(state_id), goal, pool, opts);
      rep.j["result"] = {{"found", res.found}};
      rep.j["stats"] = {{"candidates_tried", res.candidates_tried}};
      if (res.found) {
        std::string seq;
        for (const auto& spec : res.sequence) seq += atld::render_update(spec);
        rep.j["result"]["sequence"] = seq;
        rep.j["result"]["length"] = res.sequence.size();
        rep.summary = res.sequence.empty() ? "goal already holds" : "found " + seq;
      } else {
        rep.summary = "no certificate in pool (relative completeness)";
        rep.exit_code = 1;
      }
    } else if (cmd == c_gen) {
      std::string text = atld::read_file(dimacs_path);
      rep.input(dimacs_path, text);
      auto cnf = atld::parse_dimacs(text);
      auto red = atld::gen_3sat(cnf);
      std::filesystem::create_directories(out_dir);
      std::string model_out = out_dir + "/model.json";
      std::string goal_out = out_dir + "/goal.txt";
      atld::write_file(model_out, atld::save_model(red.model));
      atld::write_file(goal_out, atld::render_formula(red.goal) + "\n");
      rep.j["result"] = {{"model", model_out},
                         {"goal", goal_out},
                         {"start_state", red.start_state},
                         {"states", red.model.num_states()}};
      rep.summary = "wrote " + model_out + " (" +
                    std::to_string(red.model.num_states()) + " states)";
    } else if (cmd == c_norm) {
      if (eta_path.empty() == zeta_path.empty())
        throw atld::InputError("norm: exactly one of --eta / --zeta required");
      std::string text = atld::read_file(model_path);
      rep.input(model_path, text);
      rep.input("goal", formula_text);
      atld::Model m = atld::load_model(text);
      auto vr = atld::validate(m);
      if (!vr.ok) throw atld::InputError("invalid model: " + vr.violations.front());
      atld::FormulaPtr goal = atld::parse_formula(formula_text);
      atld::StateSet sat(m.num_states());
      std::string spec_text;
      if (!eta_path.empty()) {
        std::string etext = atld::read_file(eta_path);
        rep.input(eta_path, etext);
        auto eta = atld::parse_eta(etext);
        auto [tagged, spec] = atld::eta_to_update(m, eta);
        spec_text = atld::render_update(spec);
        sat = atld::check_effective(m, eta, goal);
        rep.j["result"] = {{"update", spec_text},
                           {"states", state_names(tagged, sat)}};
      } else {
        std::string ztext = atld::read_file(zeta_path);
        rep.input(zeta_path, ztext);
        auto zeta = atld::parse_zeta(ztext);
        spec_text = atld::render_update(atld::zeta_to_update(zeta));
        sat = atld::check_effective(m, zeta, goal);
        rep.j["result"] = {{"update", spec_text},
                           {"states", state_names(m, sat)}};
      }
      rep.summary = spec_text + " effective at " + std::to_string(sat.count()) +
                    " state(s)";
    }
  } catch (const atld::BudgetError& e) {
    rep.j["error"] = e.what();
    rep.summary = std::string("budget exceeded: ") + e.what();
    rep.exit_code = 3;
  } catch (const std::exception& e) {
    rep.j["error"] = e.what();
    rep.summary = std::string("error: ") + e.what();
    rep.exit_code = 2;
  }
  return rep.emit(elapsed());
}
