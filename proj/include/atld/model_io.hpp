#pragma once

#include <string>

#include "atld/model.hpp"

namespace atld {

// Model file format: one JSON document with keys agents, actions,
// propositions, states ([{id, label}]), availability (agent -> state ->
// action list), transitions ([{from, profile, to}]), optional
// "default_transition": "self-loop" filling unspecified profiles, and
// optional observations (agent -> list of state groups; two-element groups
// are pairs, larger ones blocks; either way groups are unioned and closed
// into an equivalence relation, unlisted states stay singletons).
Model load_model(const std::string& json_text);
Model load_model_file(const std::string& path);

// Canonical serialization: stable key order, transitions sorted with
// self-loops elided under an explicit default. save(load(save(m))) is a
// fixed point.
std::string save_model(const Model& m);
void save_model_file(const Model& m, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace atld
