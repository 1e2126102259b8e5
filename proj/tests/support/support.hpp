#pragma once

#include <random>
#include <string>
#include <vector>

#include "atld/formula.hpp"
#include "atld/model.hpp"

namespace support {

std::string fixture_path(const std::string& name);
atld::Model fixture(const std::string& name);  // load + validate or abort

struct ModelShape {
  int states = 4;
  int agents = 2;
  int actions = 2;
  int props = 2;
  bool with_obs = false;  // random partitions, availability uniform per block
};

atld::Model random_model(std::mt19937& rng, const ModelShape& shape);

struct FormulaShape {
  int depth = 3;
  bool allow_update = true;
  bool allow_knows = false;
};

atld::FormulaPtr random_formula(std::mt19937& rng, const atld::Model& m,
                                const FormulaShape& shape);

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the built command-line binary; stderr is discarded.
CliResult run_cli(const std::vector<std::string>& args);

std::string temp_dir();  // fresh directory under the system temp root

}  // namespace support
